#pragma once

#include "covreg/model.hpp"
#include "covreg/random.hpp"

#include <Eigen/Dense>

#include <vector>

namespace covreg {

struct PredictiveGaussian {
  Eigen::VectorXd mean; // length J
  Eigen::MatrixXd cov;  // J x J
};

/// Z* | Z, theta for the test locations:
///   mean = X* beta + Omega_{*Z} (tau^2 I + Omega_Z)^{-1} (z - X beta)
///   cov  = tau^2 I + Omega_* - Omega_{*Z} (tau^2 I + Omega_Z)^{-1} Omega_{Z*}
PredictiveGaussian conditional_predictive(const ParamState &state, const Eigen::VectorXd &z,
                                          const Design &train, const Design &test,
                                          const ModelSpec &spec);

/// One draw of Z* from conditional_predictive.
Eigen::VectorXd draw_predictive(Rng &rng, const ParamState &state, const Eigen::VectorXd &z,
                                const Design &train, const Design &test,
                                const ModelSpec &spec);

struct PredictiveSummary {
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  Eigen::MatrixXd draws; // L x J
};

/// Empirical quantile with linear interpolation between order statistics:
/// h = (L - 1) p, value = x_(floor h) + (h - floor h)(x_(floor h + 1) - x_(floor h)).
double empirical_quantile(std::vector<double> values, double p);

/// Column means and the (a/2, 1 - a/2) empirical quantiles of an L x J
/// matrix of predictive draws.
PredictiveSummary summarize_predictions(const Eigen::MatrixXd &draws, double a);

/// One predictive draw per posterior state, then summarize_predictions.
PredictiveSummary predict_chain(Rng &rng, const std::vector<ParamState> &draws,
                                const Eigen::VectorXd &z, const Design &train,
                                const Design &test, const ModelSpec &spec, double a);

} // namespace covreg
