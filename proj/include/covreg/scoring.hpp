#pragma once

#include "covreg/model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace covreg {

/// Mean squared prediction error (1/J) sum (truth - predicted)^2.
double mspe(const Eigen::VectorXd &truth, const Eigen::VectorXd &predicted);

/// Positively oriented CRPS of N(mu, sigma^2) at z,
///   -int (F(x) - 1{x >= z})^2 dx = sigma [1/sqrt(pi) - 2 phi(u) - u (2 Phi(u) - 1)],
/// with u = (z - mu) / sigma. Always <= 0; larger is better.
double crps_gaussian(double z, double mu, double sigma);

/// Per test point, CRPS of the univariate conditional predictive under each
/// posterior draw, averaged over draws, then averaged over points.
double crps_posterior(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                      const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                      const ModelSpec &spec);

/// log[(1/L) sum_l N_J(z_test; conditional predictive under draw l)],
/// accumulated with log-sum-exp.
double log_score(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                 const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                 const ModelSpec &spec);

struct Scores {
  double mspe = 0.0;
  double crps = 0.0;
  double log_score = 0.0;
};

/// All three criteria from one pass over the draws. MSPE uses the posterior
/// predictive mean, estimated by averaging the per-draw conditional means.
Scores score_draws(const std::vector<ParamState> &draws, const Eigen::VectorXd &z_train,
                   const Eigen::VectorXd &z_test, const Design &train, const Design &test,
                   const ModelSpec &spec);

} // namespace covreg
