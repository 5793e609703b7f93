#include "covreg/linalg.hpp"

#include <cmath>
#include <numbers>

namespace covreg {

std::optional<Eigen::LLT<Eigen::MatrixXd>> try_cholesky(const Eigen::MatrixXd &a) {
  if (!a.allFinite()) {
    return std::nullopt;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() == Eigen::Success) {
    return llt;
  }
  Eigen::MatrixXd jittered = a;
  const double jitter = 1e-10 * a.diagonal().mean();
  jittered.diagonal().array() += jitter;
  llt.compute(jittered);
  if (llt.info() == Eigen::Success) {
    return llt;
  }
  return std::nullopt;
}

Eigen::LLT<Eigen::MatrixXd> cholesky_or_throw(const Eigen::MatrixXd &a,
                                              const std::string &what) {
  auto llt = try_cholesky(a);
  if (!llt) {
    throw NumericalError("Cholesky factorization of " + what +
                         " failed (matrix not positive definite)");
  }
  return std::move(*llt);
}

double log_det(const Eigen::LLT<Eigen::MatrixXd> &llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double mvn_logpdf(const Eigen::VectorXd &x, const Eigen::VectorXd &mean,
                  const Eigen::LLT<Eigen::MatrixXd> &cov_llt) {
  const Eigen::VectorXd w = cov_llt.matrixL().solve(x - mean);
  const double n = static_cast<double>(x.size());
  return -0.5 * (n * std::log(2.0 * std::numbers::pi) + log_det(cov_llt) +
                 w.squaredNorm());
}

double min_eigenvalue(const Eigen::MatrixXd &a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

} // namespace covreg
