#include "covreg/priors.hpp"

#include "covreg/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace covreg {

void Hyperparams::validate() const {
  for (double v : {c_beta_sq, a_tau, b_tau, a_sigma, b_sigma, c_alpha_sq, s1_sq, s2_sq,
                   c_gamma_sq}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("hyperparameters must be positive and finite");
    }
  }
}

double half_cauchy_logpdf(double x, double scale) {
  if (!(x >= 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  const double r = x / scale;
  return std::log(2.0 / (std::numbers::pi * scale)) - std::log1p(r * r);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Independent N(0, var) log density summed over a coefficient block.
double iid_normal_logpdf(const double *data, Eigen::Index n, double var) {
  double ss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    ss += data[i] * data[i];
  }
  return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi * var) -
         0.5 * ss / var;
}

} // namespace

double log_prior_covariance(const ParamState &state, const ModelSpec &spec,
                            const Hyperparams &hp) {
  if (spec.kind == ModelKind::stationary) {
    const StationaryKernel &k = state.stationary;
    if (!(k.lambda1 > 0.0) || !(k.lambda2 > 0.0) || !(k.eta >= 0.0) ||
        !(k.eta <= std::numbers::pi / 2.0)) {
      return kNegInf;
    }
    return half_cauchy_logpdf(k.lambda1, hp.s1_sq) + half_cauchy_logpdf(k.lambda2, hp.s2_sq) +
           std::log(2.0 / std::numbers::pi);
  }
  const KernelRegression &k = state.kernel;
  double lp = iid_normal_logpdf(state.alpha_rest.data(), state.alpha_rest.size(),
                                hp.c_alpha_sq);
  lp += iid_normal_logpdf(k.gamma.data(), k.gamma.size(), hp.c_gamma_sq);
  if (!(k.psi11 > 0.0)) {
    return kNegInf;
  }
  lp += half_cauchy_logpdf(k.psi11, hp.s1_sq);
  if (k.dim() == 2) {
    if (!(k.psi22 > 0.0) || !(k.rho > -1.0 && k.rho < 1.0)) {
      return kNegInf;
    }
    lp += half_cauchy_logpdf(k.psi22, hp.s2_sq) + std::log(0.5);
  }
  return lp;
}

double log_prior(const ParamState &state, const ModelSpec &spec, const Hyperparams &hp) {
  if (!(state.tau_sq > 0.0) || !(state.sigma0_sq > 0.0)) {
    return kNegInf;
  }
  double lp = iid_normal_logpdf(state.beta.data(), state.beta.size(), hp.c_beta_sq);
  lp += inverse_gamma_logpdf(state.tau_sq, hp.a_tau, hp.b_tau);
  lp += inverse_gamma_logpdf(state.sigma0_sq, hp.a_sigma, hp.b_sigma);
  return lp + log_prior_covariance(state, spec, hp);
}

} // namespace covreg
