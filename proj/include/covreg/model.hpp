#pragma once

#include "covreg/kernel.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace covreg {

enum class ModelKind { stationary, nonstationary };

/// Fixed or log-linear smoothness. In regression mode the covariance uses the
/// pairwise-averaged smoothness, and matrices built from spatially varying
/// smoothness are not guaranteed to be positive definite.
struct SmoothnessSpec {
  enum class Mode { fixed, regression };
  Mode mode = Mode::fixed;
  double nu_fixed = 0.5;
  Eigen::VectorXd delta; // regression mode: one coefficient per kernel covariate
};

/// Which covariates enter the mean, the variance and the kernel matrices.
///
/// `mean_covariates` indexes columns of the dataset's mean design (the
/// intercept is column 0 and must be listed explicitly). The variance and
/// kernel sets index non-intercept columns of the covariance covariates; the
/// intercept is always present in both.
struct ModelSpec {
  std::string name = "custom";
  ModelKind kind = ModelKind::nonstationary;
  std::vector<int> mean_covariates;
  std::vector<int> variance_covariates;
  std::vector<int> kernel_covariates;
  SmoothnessSpec smoothness;

  /// Throws std::invalid_argument if the index sets do not fit a dataset
  /// with `q` mean columns and `p` covariance columns (intercept included).
  void validate(int q, int p) const;
};

/// S-M1: stationary anisotropic exponential model.
ModelSpec stationary_model(int q);
/// FNS-M2: every covariance covariate in both variance and kernel.
ModelSpec full_nonstationary_model(int q, int p);
/// RNS-M3: constant variance, kernel driven by the listed covariates only.
ModelSpec reduced_nonstationary_model(int q, std::vector<int> kernel_covariates);

/// Model-bound design for a set of locations: everything the covariance and
/// mean functions need, with the intercept as column 0 of var_x and kern_x.
struct Design {
  Eigen::MatrixXd coords;   // n x d
  Eigen::MatrixXd mean_x;   // n x q
  Eigen::MatrixXd var_x;    // n x pv
  Eigen::MatrixXd kern_x;   // n x pk
  Eigen::VectorXd response; // length n, or empty when unobserved

  Eigen::Index size() const { return coords.rows(); }
  Eigen::Index dim() const { return coords.cols(); }
  Design subset(const std::vector<Eigen::Index> &rows) const;
};

/// One location with its covariance covariates.
struct Site {
  Eigen::VectorXd s;
  Eigen::VectorXd x_var;
  Eigen::VectorXd x_kern;
};

Site site_of(const Design &design, Eigen::Index i);

/// Full sampler state theta plus the latent process draw. `kernel` is used
/// by nonstationary models, `stationary` by the stationary one.
struct ParamState {
  Eigen::VectorXd beta;
  double tau_sq = 0.1;
  double sigma0_sq = 1.0;
  Eigen::VectorXd alpha_rest;
  KernelRegression kernel;
  StationaryKernel stationary;
  Eigen::VectorXd y_latent;
};

/// Zero-initialized state with the shapes implied by `spec` and `design`.
ParamState shaped_state(const ModelSpec &spec, const Design &design);

/// Kernel matrix Sigma(s) for a site under the given model.
Eigen::MatrixXd site_kernel(const Site &site, const ModelSpec &spec,
                            const ParamState &state);

} // namespace covreg
