#include "covreg/kernel.hpp"

#include "covreg/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace covreg {

Eigen::MatrixXd KernelRegression::psi() const {
  const Eigen::Index d = dim();
  if (d == 1) {
    if (!(psi11 > 0.0)) {
      throw std::invalid_argument("kernel: psi11 must be positive");
    }
    return Eigen::MatrixXd::Constant(1, 1, psi11);
  }
  if (d != 2) {
    throw std::invalid_argument("kernel: spatial dimension must be 1 or 2");
  }
  if (!(psi11 > 0.0) || !(psi22 > 0.0) || !(rho > -1.0 && rho < 1.0)) {
    throw std::invalid_argument("kernel: Psi fields do not describe an SPD matrix");
  }
  const double off = rho * std::sqrt(psi11 * psi22);
  Eigen::MatrixXd m(2, 2);
  m << psi11, off, off, psi22;
  return m;
}

void KernelRegression::set_psi(const Eigen::MatrixXd &m) {
  psi11 = m(0, 0);
  if (m.rows() == 2) {
    psi22 = m(1, 1);
    rho = 0.5 * (m(0, 1) + m(1, 0)) / std::sqrt(psi11 * psi22);
  }
}

Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd &x, const KernelRegression &k) {
  if (x.size() != k.gamma.cols()) {
    throw std::invalid_argument("kernel_matrix: covariate length " +
                                std::to_string(x.size()) + " does not match Gamma with " +
                                std::to_string(k.gamma.cols()) + " columns");
  }
  const Eigen::VectorXd g = k.gamma * x;
  return k.psi() + g * g.transpose();
}

double q_statistic(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                   const Eigen::MatrixXd &sigma_i, const Eigen::MatrixXd &sigma_j) {
  const Eigen::Index d = si.size();
  if (sj.size() != d || sigma_i.rows() != d || sigma_j.rows() != d ||
      sigma_i.cols() != d || sigma_j.cols() != d) {
    throw std::invalid_argument("q_statistic: dimension mismatch");
  }
  const Eigen::MatrixXd avg = 0.5 * (sigma_i + sigma_j);
  const Eigen::VectorXd diff = si - sj;
  if (d == 1) {
    if (!(avg(0, 0) > 0.0)) {
      throw NumericalError("q_statistic: averaged kernel is singular");
    }
    return diff(0) * diff(0) / avg(0, 0);
  }
  const double det = avg(0, 0) * avg(1, 1) - avg(0, 1) * avg(1, 0);
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw NumericalError("q_statistic: averaged kernel is singular");
  }
  return (avg(1, 1) * diff(0) * diff(0) - (avg(0, 1) + avg(1, 0)) * diff(0) * diff(1) +
          avg(0, 0) * diff(1) * diff(1)) /
         det;
}

Eigen::Matrix2d stationary_kernel_matrix(const StationaryKernel &k) {
  const double c = std::cos(k.eta);
  const double s = std::sin(k.eta);
  Eigen::Matrix2d rot;
  rot << c, -s, s, c;
  return rot * Eigen::Vector2d(k.lambda1, k.lambda2).asDiagonal() * rot.transpose();
}

StationaryKernel stationary_kernel_from_matrix(const Eigen::Matrix2d &m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success || !(es.eigenvalues()(0) > 0.0)) {
    throw std::invalid_argument("stationary kernel: matrix is not positive definite");
  }
  const Eigen::Vector2d v = es.eigenvectors().col(0);
  double theta = std::atan2(v(1), v(0));
  if (theta < 0.0) {
    theta += std::numbers::pi;
  }
  if (theta >= std::numbers::pi) {
    theta -= std::numbers::pi;
  }
  StationaryKernel k;
  if (theta <= std::numbers::pi / 2.0) {
    k = {es.eigenvalues()(0), es.eigenvalues()(1), theta};
  } else {
    k = {es.eigenvalues()(1), es.eigenvalues()(0), theta - std::numbers::pi / 2.0};
  }
  return k;
}

} // namespace covreg
