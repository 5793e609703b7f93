#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace covreg {

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Closed-form Gaussian-kernel convolution covariance
/// (2 pi)^{-d/2} |S_avg|^{-1/2} exp{-Q_ij}.
double gaussian_convolution_cov(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                                const Eigen::MatrixXd &sigma_i,
                                const Eigen::MatrixXd &sigma_j);

/// Numerical integral of N(u; si, Ki) N(u; sj, Kj) over u in R^d (d = 1, 2),
/// by trapezoid rules on a box spanning +/-8 marginal standard deviations of
/// both densities. The grid is doubled until successive estimates agree to
/// 1e-6 relative, at most four times; QuadratureError otherwise.
double gaussian_kernel_overlap(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                               const Eigen::MatrixXd &ki, const Eigen::MatrixXd &kj);

/// Quadrature evaluation of the convolution covariance for kernel matrices
/// Sigma_i, Sigma_j. The smoothing kernels whose overlap integral reproduces
/// the closed form exactly are K_s(u) = 2^{-d/4} N(u; s, Sigma(s)/4), so this
/// returns 2^{-d/2} * gaussian_kernel_overlap(si, sj, Sigma_i/4, Sigma_j/4).
double convolution_oracle(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                          const Eigen::MatrixXd &sigma_i, const Eigen::MatrixXd &sigma_j);

} // namespace covreg
