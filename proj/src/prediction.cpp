#include "covreg/prediction.hpp"

#include "covreg/covariance.hpp"
#include "covreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covreg {

PredictiveGaussian conditional_predictive(const ParamState &state, const Eigen::VectorXd &z,
                                          const Design &train, const Design &test,
                                          const ModelSpec &spec) {
  if (test.size() < 1) {
    throw std::invalid_argument("conditional_predictive: no test locations");
  }
  if (z.size() != train.size()) {
    throw std::invalid_argument("conditional_predictive: response length does not match");
  }
  Eigen::MatrixXd v = build_cov_matrix(train, spec, state);
  v.diagonal().array() += state.tau_sq;
  const auto llt = cholesky_or_throw(v, "tau^2 I + Omega_Z (prediction)");
  const Eigen::MatrixXd cross = build_cov_matrix(test, train, spec, state); // J x n
  const Eigen::MatrixXd w = llt.solve(cross.transpose());                   // n x J

  PredictiveGaussian out;
  out.mean = test.mean_x * state.beta + w.transpose() * (z - train.mean_x * state.beta);
  out.cov = build_cov_matrix(test, spec, state) - cross * w;
  out.cov.diagonal().array() += state.tau_sq;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

Eigen::VectorXd draw_predictive(Rng &rng, const ParamState &state, const Eigen::VectorXd &z,
                                const Design &train, const Design &test,
                                const ModelSpec &spec) {
  const PredictiveGaussian g = conditional_predictive(state, z, train, test, spec);
  return sample_mvn_psd(rng, g.mean, g.cov);
}

double empirical_quantile(std::vector<double> values, double p) {
  if (values.empty()) {
    throw std::invalid_argument("empirical_quantile: no values");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("empirical_quantile: p outside [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

PredictiveSummary summarize_predictions(const Eigen::MatrixXd &draws, double a) {
  if (draws.rows() < 1 || draws.cols() < 1) {
    throw std::invalid_argument("summarize_predictions: empty draw matrix");
  }
  if (!(a > 0.0 && a < 1.0)) {
    throw std::invalid_argument("summarize_predictions: level must be in (0, 1)");
  }
  PredictiveSummary out;
  const Eigen::Index j = draws.cols();
  out.mean = draws.colwise().mean().transpose();
  out.lower.resize(j);
  out.upper.resize(j);
  for (Eigen::Index c = 0; c < j; ++c) {
    std::vector<double> col(draws.col(c).data(), draws.col(c).data() + draws.rows());
    out.lower(c) = empirical_quantile(col, a / 2.0);
    out.upper(c) = empirical_quantile(std::move(col), 1.0 - a / 2.0);
  }
  out.draws = draws;
  return out;
}

PredictiveSummary predict_chain(Rng &rng, const std::vector<ParamState> &draws,
                                const Eigen::VectorXd &z, const Design &train,
                                const Design &test, const ModelSpec &spec, double a) {
  if (draws.empty()) {
    throw std::invalid_argument("predict_chain: empty chain");
  }
  Eigen::MatrixXd samples(static_cast<Eigen::Index>(draws.size()), test.size());
  for (std::size_t l = 0; l < draws.size(); ++l) {
    samples.row(static_cast<Eigen::Index>(l)) =
        draw_predictive(rng, draws[l], z, train, test, spec).transpose();
  }
  return summarize_predictions(samples, a);
}

} // namespace covreg
