#pragma once

#include "covreg/model.hpp"

namespace covreg {

/// Prior hyperparameters. Defaults are the values used for the Colorado
/// precipitation fits.
struct Hyperparams {
  double c_beta_sq = 100.0 * 100.0;
  double a_tau = 2.0;
  double b_tau = 0.05;
  double a_sigma = 2.0;
  double b_sigma = 0.5;
  double c_alpha_sq = 100.0;
  double s1_sq = 1.0;
  double s2_sq = 1.0;
  double c_gamma_sq = 5.0;

  void validate() const;
};

/// Half-Cauchy(0, scale) log density on x >= 0; -inf below zero.
double half_cauchy_logpdf(double x, double scale);

/// Sum of independent-component log prior densities for the parameters the
/// model kind uses. Returns -inf outside the support.
///
/// Nonstationary: beta ~ N(0, c_beta^2 I), tau^2 ~ IG(a_tau, b_tau),
/// sigma0^2 ~ IG(a_sigma, b_sigma), alpha_{-0} ~ N(0, c_alpha^2 I),
/// vec Gamma ~ N(0, c_Gamma^2 I), psi11, psi22 half-Cauchy(s1^2), (s2^2),
/// rho ~ U(-1, 1). Stationary: the same for beta, tau^2, sigma0^2, with
/// lambda1, lambda2 half-Cauchy and eta ~ U[0, pi/2].
double log_prior(const ParamState &state, const ModelSpec &spec, const Hyperparams &hp);

/// The covariance-block part of log_prior alone (alpha, Gamma, Psi or the
/// stationary kernel parameters).
double log_prior_covariance(const ParamState &state, const ModelSpec &spec,
                            const Hyperparams &hp);

} // namespace covreg
