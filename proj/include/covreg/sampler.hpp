#pragma once

#include "covreg/model.hpp"
#include "covreg/priors.hpp"
#include "covreg/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace covreg {

/// Steps of one sweep, reported to ChainConfig::trace in execution order.
enum class SweepStep { beta, gamma, psi, alpha, stationary_kernel, latent, tau2, sigma02 };

const char *step_name(SweepStep s);

struct ChainConfig {
  int iterations = 10000;
  int burn_in = 2000;
  std::uint64_t seed = 1;

  // Initial random-walk scales per block; adaptation refines them per
  // component during burn-in.
  double rw_scale_gamma = 0.5;
  double rw_scale_alpha = 0.5;
  double rw_scale_log_lambda = 0.3;
  double rw_scale_eta = 0.2;

  double psi_scale_k = 0.65;
  double psi_df = 4.0;

  bool adapt = true;
  double target_low = 0.20;
  double target_high = 0.40;
  int adapt_window = 100;
  double adapt_factor = 1.1;

  /// Replace the likelihood by a constant: the chain then targets the prior.
  bool prior_only = false;

  /// Length of the stationary pilot run that supplies the Psi anchor.
  int pilot_iterations = 2000;

  std::function<void(SweepStep)> trace;

  void validate(Eigen::Index d) const;
};

/// Scalar coordinate touched by a random-walk update.
struct Component {
  enum class Kind { gamma, alpha, log_lambda1, log_lambda2, eta };
  Kind kind = Kind::gamma;
  Eigen::Index row = 0;
  Eigen::Index col = 0;

  std::string name() const;
};

struct AcceptStat {
  std::string name;
  long accepted = 0;
  long proposed = 0;
  double final_scale = 0.0; // 0 for the independence proposal

  double rate() const { return proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0; }
};

struct PosteriorChain {
  std::vector<ParamState> draws; // post burn-in, in sweep order
  std::vector<AcceptStat> accept;
  std::vector<double> log_posterior_trace; // one per retained draw
  Eigen::MatrixXd psi_anchor;              // k * Sigma_hat (nonstationary models)
};

/// Collapsed (Y integrated out) log target used by the Metropolis steps:
/// marginal log-likelihood plus the covariance-block log prior. The
/// likelihood term is dropped in prior-only mode.
double log_target(const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec,
                  const ParamState &state, const Hyperparams &hp, bool prior_only);

/// Metropolis accept/reject given log acceptance ratio.
bool mh_accept(Rng &rng, double log_ratio);

/// Gaussian random walk on one scalar coordinate. `current` holds the log
/// target of `state` and is updated on acceptance. Log-scale coordinates
/// carry their Jacobian in the ratio.
bool mh_rw_update(Rng &rng, const Component &c, ParamState &state, double &current,
                  const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec,
                  const Hyperparams &hp, double scale, bool prior_only);

/// Log target of Psi in matrix coordinates: log_target plus the
/// (psi11 psi22)^{-1/2} change-of-variables factor from (psi11, psi22, rho).
double psi_log_target(const Eigen::VectorXd &z, const Design &design,
                      const ModelSpec &spec, const ParamState &state,
                      const Hyperparams &hp, bool prior_only);

/// Independence MH for Psi with an inverse-Wishart(anchor, df) proposal.
/// `current` is psi_log_target of `state`. Proposals that are not positive
/// definite are redrawn, up to 100 times, after which the move is rejected.
bool mh_psi_update(Rng &rng, ParamState &state, double &current, const Eigen::VectorXd &z,
                   const Design &design, const ModelSpec &spec, const Hyperparams &hp,
                   const Eigen::MatrixXd &anchor, double df, bool prior_only);

/// Starting state: OLS beta, residual-variance split 0.1 / 0.9 between tau^2
/// and sigma0^2, alpha = 0, Gamma = 0, Psi = psi_start.
ParamState initial_state(const Eigen::VectorXd &z, const Design &design,
                         const ModelSpec &spec, const Eigen::MatrixXd &psi_start);

/// Rejects degenerate inputs (n < q, constant non-intercept columns, shape
/// mismatches) with std::invalid_argument.
void check_inputs(const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec);

/// Partially collapsed Gibbs sampler. Nonstationary models need the
/// stationary anisotropy estimate `sigma_hat`; the Psi proposal is anchored
/// at psi_scale_k * sigma_hat.
PosteriorChain run_sampler4(const Eigen::VectorXd &z, const Design &design,
                            const ModelSpec &spec, const Hyperparams &hp,
                            const ChainConfig &cfg,
                            const std::optional<Eigen::MatrixXd> &sigma_hat = std::nullopt);

/// Posterior mean of the stationary kernel matrix over a chain.
Eigen::MatrixXd mean_stationary_kernel(const PosteriorChain &chain);

/// Runs the stationary pilot when the model is nonstationary and no anchor
/// is given, then the main chain.
PosteriorChain fit_model(const Eigen::VectorXd &z, const Design &design,
                         const ModelSpec &spec, const Hyperparams &hp,
                         const ChainConfig &cfg,
                         const std::optional<Eigen::MatrixXd> &sigma_hat = std::nullopt);

} // namespace covreg
