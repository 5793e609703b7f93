#pragma once

#include <Eigen/Dense>

namespace covreg {

/// Baseline kernel matrix Psi stored as (psi11, psi22, rho) plus the d x p
/// regression matrix Gamma. For d = 1 only psi11 is used.
struct KernelRegression {
  double psi11 = 1.0;
  double psi22 = 1.0;
  double rho = 0.0;
  Eigen::MatrixXd gamma; // d x p

  Eigen::Index dim() const { return gamma.rows(); }

  /// Psi reconstructed from (psi11, psi22, rho). Throws std::invalid_argument
  /// when the stored fields do not describe an SPD matrix.
  Eigen::MatrixXd psi() const;

  /// Sets (psi11, psi22, rho) from a 2x2 (or 1x1) SPD matrix.
  void set_psi(const Eigen::MatrixXd &m);
};

/// Spectral parameterization of a stationary 2x2 anisotropy matrix.
struct StationaryKernel {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double eta = 0.0; // rotation angle, radians, in [0, pi/2]
};

/// Sigma(s) = Psi + Gamma x x' Gamma'.
Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd &x, const KernelRegression &k);

/// (si - sj)' [(Sigma_i + Sigma_j) / 2]^{-1} (si - sj).
double q_statistic(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                   const Eigen::MatrixXd &sigma_i, const Eigen::MatrixXd &sigma_j);

/// R(eta) diag(lambda1, lambda2) R(eta)' with R(eta) = [[cos, -sin], [sin, cos]].
Eigen::Matrix2d stationary_kernel_matrix(const StationaryKernel &k);

/// Inverse of stationary_kernel_matrix, with eta in [0, pi/2].
StationaryKernel stationary_kernel_from_matrix(const Eigen::Matrix2d &m);

} // namespace covreg
