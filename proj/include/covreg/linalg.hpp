#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace covreg {

/// Raised when a covariance matrix cannot be factorized (or a kernel
/// matrix average is numerically singular).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Cholesky factorization with the library's jitter policy: one retry with
/// 1e-10 * mean(diag) added to the diagonal, then give up.
std::optional<Eigen::LLT<Eigen::MatrixXd>> try_cholesky(const Eigen::MatrixXd &a);

/// Same as try_cholesky but throws NumericalError on failure. `what` names
/// the matrix in the diagnostic.
Eigen::LLT<Eigen::MatrixXd> cholesky_or_throw(const Eigen::MatrixXd &a,
                                              const std::string &what);

double log_det(const Eigen::LLT<Eigen::MatrixXd> &llt);

/// log N(x; mean, cov) given a factorization of cov.
double mvn_logpdf(const Eigen::VectorXd &x, const Eigen::VectorXd &mean,
                  const Eigen::LLT<Eigen::MatrixXd> &cov_llt);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd &a);

} // namespace covreg
