#pragma once

#include "covreg/model.hpp"
#include "covreg/priors.hpp"
#include "covreg/random.hpp"

#include <Eigen/Dense>

namespace covreg {

/// Gaussian full conditional N(mean, cov).
struct GaussianConditional {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Inverse-gamma full conditional (shape, rate).
struct InverseGammaConditional {
  double shape = 0.0;
  double rate = 0.0;
};

// beta | Z, tau^2, sigma0^2, alpha, Psi, Gamma with Y marginalized out.
// `v` is tau^2 I + Omega. With prior_only the data terms are dropped and the
// conditional is the N(0, c_beta^2 I) prior.
GaussianConditional beta_conditional(const Eigen::VectorXd &z, const Eigen::MatrixXd &x,
                                     const Eigen::MatrixXd &v, const Hyperparams &hp,
                                     bool prior_only = false);

/// [c^-2 I + X' V^{-1} X]^{-1}, computed directly.
Eigen::MatrixXd beta_cov_direct(const Eigen::MatrixXd &x, const Eigen::MatrixXd &v,
                                double c_beta_sq);
/// c^2 I - c^4 X' [V + c^2 X X']^{-1} X (Woodbury form of the same matrix).
Eigen::MatrixXd beta_cov_woodbury(const Eigen::MatrixXd &x, const Eigen::MatrixXd &v,
                                  double c_beta_sq);

Eigen::VectorXd sample_beta_fc(Rng &rng, const Eigen::VectorXd &z, const ParamState &state,
                               const Design &design, const ModelSpec &spec,
                               const Hyperparams &hp, bool prior_only = false);

InverseGammaConditional tau2_conditional(const Eigen::VectorXd &z, const Eigen::VectorXd &y,
                                         const Hyperparams &hp, bool prior_only = false);
double sample_tau2_fc(Rng &rng, const Eigen::VectorXd &z, const Eigen::VectorXd &y,
                      const Hyperparams &hp, bool prior_only = false);

/// sigma0^2 | Y, beta, alpha, Psi, Gamma; `unscaled_cov` is Omega / sigma0^2.
InverseGammaConditional sigma02_conditional(const Eigen::VectorXd &y,
                                            const Eigen::VectorXd &mean,
                                            const Eigen::MatrixXd &unscaled_cov,
                                            const Hyperparams &hp, bool prior_only = false);
double sample_sigma02_fc(Rng &rng, const Eigen::VectorXd &y, const ParamState &state,
                         const Design &design, const ModelSpec &spec, const Hyperparams &hp,
                         bool prior_only = false);

/// Y | Z, theta. Covariance Omega - Omega (Omega + tau^2 I)^{-1} Omega and mean
/// Sigma_Y (Omega^{-1} X beta + z / tau^2), evaluated without forming
/// Omega^{-1} (the mean reduces to X beta + Omega (Omega + tau^2 I)^{-1} (z - X beta)).
GaussianConditional latent_conditional(const Eigen::VectorXd &z,
                                       const Eigen::VectorXd &mean,
                                       const Eigen::MatrixXd &omega, double tau_sq);
/// (Omega^{-1} + tau^-2 I)^{-1}, the textbook form (needs Omega invertible).
Eigen::MatrixXd latent_cov_direct(const Eigen::MatrixXd &omega, double tau_sq);

Eigen::VectorXd sample_y_fc(Rng &rng, const Eigen::VectorXd &z, const ParamState &state,
                            const Design &design, const ModelSpec &spec);

} // namespace covreg
