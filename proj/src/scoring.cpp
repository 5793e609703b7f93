#include "covreg/scoring.hpp"

#include "covreg/linalg.hpp"
#include "covreg/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace covreg {

double mspe(const Eigen::VectorXd &truth, const Eigen::VectorXd &predicted) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("mspe: length mismatch");
  }
  if (truth.size() == 0) {
    throw std::invalid_argument("mspe: no test points");
  }
  return (truth - predicted).squaredNorm() / static_cast<double>(truth.size());
}

double crps_gaussian(double z, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("crps_gaussian: sigma must be positive");
  }
  const double u = (z - mu) / sigma;
  const double pdf = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-u / std::numbers::sqrt2);
  return sigma * (1.0 / std::sqrt(std::numbers::pi) - 2.0 * pdf - u * (2.0 * cdf - 1.0));
}

namespace {

void check_scoring_inputs(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_test,
                          const Design &test) {
  if (draws.empty()) {
    throw std::invalid_argument("scoring: empty chain");
  }
  if (z_test.size() != test.size()) {
    throw std::invalid_argument("scoring: held-out response length does not match");
  }
}

double log_mean_exp(const std::vector<double> &v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) {
    return m;
  }
  double acc = 0.0;
  for (double x : v) {
    acc += std::exp(x - m);
  }
  return m + std::log(acc / static_cast<double>(v.size()));
}

} // namespace

Scores score_draws(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                   const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                   const ModelSpec &spec) {
  check_scoring_inputs(draws, z_test, test);
  const Eigen::Index j = test.size();
  Eigen::VectorXd mean_acc = Eigen::VectorXd::Zero(j);
  Eigen::VectorXd crps_acc = Eigen::VectorXd::Zero(j);
  std::vector<double> log_dens;
  log_dens.reserve(draws.size());
  for (const ParamState &st : draws) {
    const PredictiveGaussian g = conditional_predictive(st, z_train, train, test, spec);
    mean_acc += g.mean;
    for (Eigen::Index k = 0; k < j; ++k) {
      crps_acc(k) += crps_gaussian(z_test(k), g.mean(k), std::sqrt(g.cov(k, k)));
    }
    const auto llt = cholesky_or_throw(g.cov, "predictive covariance (log score)");
    log_dens.push_back(mvn_logpdf(z_test, g.mean, llt));
  }
  const double l = static_cast<double>(draws.size());
  Scores s;
  s.mspe = mspe(z_test, mean_acc / l);
  s.crps = crps_acc.sum() / (l * static_cast<double>(j));
  s.log_score = log_mean_exp(log_dens);
  return s;
}

double crps_posterior(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                      const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                      const ModelSpec &spec) {
  check_scoring_inputs(draws, z_test, test);
  const Eigen::Index j = test.size();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(j);
  for (const ParamState &st : draws) {
    const PredictiveGaussian g = conditional_predictive(st, z_train, train, test, spec);
    for (Eigen::Index k = 0; k < j; ++k) {
      acc(k) += crps_gaussian(z_test(k), g.mean(k), std::sqrt(g.cov(k, k)));
    }
  }
  acc /= static_cast<double>(draws.size());
  return acc.mean();
}

double log_score(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                 const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                 const ModelSpec &spec) {
  check_scoring_inputs(draws, z_test, test);
  std::vector<double> log_dens;
  log_dens.reserve(draws.size());
  for (const ParamState &st : draws) {
    const PredictiveGaussian g = conditional_predictive(st, z_train, train, test, spec);
    const auto llt = cholesky_or_throw(g.cov, "predictive covariance (log score)");
    log_dens.push_back(mvn_logpdf(z_test, g.mean, llt));
  }
  return log_mean_exp(log_dens);
}

} // namespace covreg
