#include "covreg/conditionals.hpp"

#include "covreg/covariance.hpp"
#include "covreg/likelihood.hpp"
#include "covreg/linalg.hpp"

#include <stdexcept>

namespace covreg {

GaussianConditional beta_conditional(const Eigen::VectorXd &z, const Eigen::MatrixXd &x,
                                     const Eigen::MatrixXd &v, const Hyperparams &hp,
                                     bool prior_only) {
  const Eigen::Index q = x.cols();
  if (prior_only) {
    return {Eigen::VectorXd::Zero(q),
            hp.c_beta_sq * Eigen::MatrixXd::Identity(q, q)};
  }
  const auto v_llt = cholesky_or_throw(v, "tau^2 I + Omega (beta update)");
  const Eigen::MatrixXd vinv_x = v_llt.solve(x);
  Eigen::MatrixXd precision = x.transpose() * vinv_x;
  precision.diagonal().array() += 1.0 / hp.c_beta_sq;
  const auto p_llt = cholesky_or_throw(precision, "beta posterior precision");
  GaussianConditional out;
  out.cov = p_llt.solve(Eigen::MatrixXd::Identity(q, q));
  out.mean = p_llt.solve(vinv_x.transpose() * z);
  return out;
}

Eigen::MatrixXd beta_cov_direct(const Eigen::MatrixXd &x, const Eigen::MatrixXd &v,
                                double c_beta_sq) {
  const auto v_llt = cholesky_or_throw(v, "tau^2 I + Omega");
  Eigen::MatrixXd precision = x.transpose() * v_llt.solve(x);
  precision.diagonal().array() += 1.0 / c_beta_sq;
  return precision.inverse();
}

Eigen::MatrixXd beta_cov_woodbury(const Eigen::MatrixXd &x, const Eigen::MatrixXd &v,
                                  double c_beta_sq) {
  const Eigen::Index q = x.cols();
  const Eigen::MatrixXd inner = v + c_beta_sq * x * x.transpose();
  const auto llt = cholesky_or_throw(inner, "tau^2 I + Omega + c^2 X X'");
  return c_beta_sq * Eigen::MatrixXd::Identity(q, q) -
         c_beta_sq * c_beta_sq * x.transpose() * llt.solve(x);
}

Eigen::VectorXd sample_beta_fc(Rng &rng, const Eigen::VectorXd &z, const ParamState &state,
                               const Design &design, const ModelSpec &spec,
                               const Hyperparams &hp, bool prior_only) {
  const Eigen::Index q = design.mean_x.cols();
  GaussianConditional fc;
  if (prior_only) {
    fc = beta_conditional(z, design.mean_x, Eigen::MatrixXd(), hp, true);
  } else {
    fc = beta_conditional(z, design.mean_x, marginal_covariance(design, spec, state), hp);
  }
  const auto llt = cholesky_or_throw(fc.cov, "beta posterior covariance");
  return fc.mean + llt.matrixL() * standard_normal_vector(rng, q);
}

InverseGammaConditional tau2_conditional(const Eigen::VectorXd &z, const Eigen::VectorXd &y,
                                         const Hyperparams &hp, bool prior_only) {
  if (z.size() != y.size()) {
    throw std::invalid_argument("tau2 update: z and y lengths differ");
  }
  if (prior_only) {
    return {hp.a_tau, hp.b_tau};
  }
  const double n = static_cast<double>(z.size());
  return {hp.a_tau + 0.5 * n, hp.b_tau + 0.5 * (z - y).squaredNorm()};
}

double sample_tau2_fc(Rng &rng, const Eigen::VectorXd &z, const Eigen::VectorXd &y,
                      const Hyperparams &hp, bool prior_only) {
  const auto ig = tau2_conditional(z, y, hp, prior_only);
  return sample_inverse_gamma(rng, ig.shape, ig.rate);
}

InverseGammaConditional sigma02_conditional(const Eigen::VectorXd &y,
                                            const Eigen::VectorXd &mean,
                                            const Eigen::MatrixXd &unscaled_cov,
                                            const Hyperparams &hp, bool prior_only) {
  if (prior_only) {
    return {hp.a_sigma, hp.b_sigma};
  }
  const auto llt = cholesky_or_throw(unscaled_cov, "unscaled covariance (sigma0^2 update)");
  const Eigen::VectorXd w = llt.matrixL().solve(y - mean);
  const double n = static_cast<double>(y.size());
  return {hp.a_sigma + 0.5 * n, hp.b_sigma + 0.5 * w.squaredNorm()};
}

double sample_sigma02_fc(Rng &rng, const Eigen::VectorXd &y, const ParamState &state,
                         const Design &design, const ModelSpec &spec, const Hyperparams &hp,
                         bool prior_only) {
  InverseGammaConditional ig;
  if (prior_only) {
    ig = {hp.a_sigma, hp.b_sigma};
  } else {
    ig = sigma02_conditional(y, design.mean_x * state.beta,
                             build_unscaled_cov_matrix(design, spec, state), hp);
  }
  return sample_inverse_gamma(rng, ig.shape, ig.rate);
}

GaussianConditional latent_conditional(const Eigen::VectorXd &z,
                                       const Eigen::VectorXd &mean,
                                       const Eigen::MatrixXd &omega, double tau_sq) {
  Eigen::MatrixXd v = omega;
  v.diagonal().array() += tau_sq;
  const auto llt = cholesky_or_throw(v, "Omega + tau^2 I (latent update)");
  GaussianConditional out;
  const Eigen::MatrixXd vinv_omega = llt.solve(omega);
  out.cov = omega - omega * vinv_omega;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.mean = mean + vinv_omega.transpose() * (z - mean);
  return out;
}

Eigen::MatrixXd latent_cov_direct(const Eigen::MatrixXd &omega, double tau_sq) {
  Eigen::MatrixXd prec = omega.inverse();
  prec.diagonal().array() += 1.0 / tau_sq;
  return prec.inverse();
}

Eigen::VectorXd sample_y_fc(Rng &rng, const Eigen::VectorXd &z, const ParamState &state,
                            const Design &design, const ModelSpec &spec) {
  const Eigen::MatrixXd omega = build_cov_matrix(design, spec, state);
  const auto fc = latent_conditional(z, design.mean_x * state.beta, omega, state.tau_sq);
  return sample_mvn_psd(rng, fc.mean, fc.cov);
}

} // namespace covreg
