#include "covreg/sampler.hpp"

#include "covreg/conditionals.hpp"
#include "covreg/likelihood.hpp"
#include "covreg/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace covreg {

const char *step_name(SweepStep s) {
  switch (s) {
  case SweepStep::beta:
    return "beta";
  case SweepStep::gamma:
    return "gamma";
  case SweepStep::psi:
    return "psi";
  case SweepStep::alpha:
    return "alpha";
  case SweepStep::stationary_kernel:
    return "stationary_kernel";
  case SweepStep::latent:
    return "latent";
  case SweepStep::tau2:
    return "tau2";
  case SweepStep::sigma02:
    return "sigma02";
  }
  return "?";
}

void ChainConfig::validate(Eigen::Index d) const {
  if (iterations <= 0 || burn_in < 0 || burn_in > iterations) {
    throw std::invalid_argument("chain: need iterations > 0 and 0 <= burn_in <= iterations");
  }
  if (!(psi_scale_k > 0.0)) {
    throw std::invalid_argument("chain: psi proposal scale k must be positive");
  }
  if (!(psi_df > static_cast<double>(d) + 1.0)) {
    throw std::invalid_argument("chain: psi proposal df must exceed d + 1");
  }
  for (double s : {rw_scale_gamma, rw_scale_alpha, rw_scale_log_lambda, rw_scale_eta}) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("chain: random-walk scales must be positive");
    }
  }
  if (adapt && (adapt_window <= 0 || !(adapt_factor > 1.0) || !(target_low < target_high))) {
    throw std::invalid_argument("chain: invalid adaptation settings");
  }
  if (pilot_iterations <= 0) {
    throw std::invalid_argument("chain: pilot_iterations must be positive");
  }
}

std::string Component::name() const {
  switch (kind) {
  case Kind::gamma:
    return "gamma_" + std::to_string(row + 1) + std::to_string(col + 1);
  case Kind::alpha:
    return "alpha_" + std::to_string(row + 1);
  case Kind::log_lambda1:
    return "lambda1";
  case Kind::log_lambda2:
    return "lambda2";
  case Kind::eta:
    return "eta";
  }
  return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double &coordinate(ParamState &state, const Component &c) {
  switch (c.kind) {
  case Component::Kind::gamma:
    return state.kernel.gamma(c.row, c.col);
  case Component::Kind::alpha:
    return state.alpha_rest(c.row);
  case Component::Kind::log_lambda1:
    return state.stationary.lambda1;
  case Component::Kind::log_lambda2:
    return state.stationary.lambda2;
  case Component::Kind::eta:
    return state.stationary.eta;
  }
  throw std::logic_error("unknown component");
}

} // namespace

double log_target(const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec,
                  const ParamState &state, const Hyperparams &hp, bool prior_only) {
  const double lp = log_prior_covariance(state, spec, hp);
  if (!std::isfinite(lp) || prior_only) {
    return lp;
  }
  return lp + marginal_loglik(z, spec, state, design);
}

bool mh_accept(Rng &rng, double log_ratio) {
  if (std::isnan(log_ratio)) {
    return false;
  }
  if (log_ratio >= 0.0) {
    return true;
  }
  return std::log(uniform01(rng)) < log_ratio;
}

bool mh_rw_update(Rng &rng, const Component &c, ParamState &state, double &current,
                  const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec,
                  const Hyperparams &hp, double scale, bool prior_only) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("mh_rw_update: scale must be positive");
  }
  double &x = coordinate(state, c);
  const double old_value = x;
  const double step = scale * standard_normal(rng);
  const bool log_scale =
      c.kind == Component::Kind::log_lambda1 || c.kind == Component::Kind::log_lambda2;
  double log_jacobian = 0.0;
  if (log_scale) {
    x = old_value * std::exp(step);
    log_jacobian = step; // log(x_new) - log(x_old)
  } else {
    x = old_value + step;
  }
  const double proposed = log_target(z, design, spec, state, hp, prior_only);
  if (proposed == kNegInf || !mh_accept(rng, proposed - current + log_jacobian)) {
    x = old_value;
    return false;
  }
  current = proposed;
  return true;
}

double psi_log_target(const Eigen::VectorXd &z, const Design &design,
                      const ModelSpec &spec, const ParamState &state,
                      const Hyperparams &hp, bool prior_only) {
  const double t = log_target(z, design, spec, state, hp, prior_only);
  if (state.kernel.dim() != 2 || t == kNegInf) {
    return t;
  }
  return t - 0.5 * std::log(state.kernel.psi11 * state.kernel.psi22);
}

bool mh_psi_update(Rng &rng, ParamState &state, double &current, const Eigen::VectorXd &z,
                   const Design &design, const ModelSpec &spec, const Hyperparams &hp,
                   const Eigen::MatrixXd &anchor, double df, bool prior_only) {
  Eigen::MatrixXd proposal;
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    proposal = sample_inverse_wishart(rng, anchor, df);
    Eigen::LLT<Eigen::MatrixXd> llt(proposal);
    ok = proposal.allFinite() && llt.info() == Eigen::Success;
  }
  if (!ok) {
    return false;
  }
  const Eigen::MatrixXd current_psi = state.kernel.psi();
  const KernelRegression saved = state.kernel;
  state.kernel.set_psi(proposal);
  const double proposed = psi_log_target(z, design, spec, state, hp, prior_only);
  const double log_ratio = proposed - current + inverse_wishart_logpdf(current_psi, anchor, df) -
                           inverse_wishart_logpdf(proposal, anchor, df);
  if (proposed == kNegInf || !mh_accept(rng, log_ratio)) {
    state.kernel = saved;
    return false;
  }
  current = proposed;
  return true;
}

void check_inputs(const Eigen::VectorXd &z, const Design &design, const ModelSpec &spec) {
  const Eigen::Index n = design.size();
  if (z.size() != n) {
    throw std::invalid_argument("sampler: response length does not match design");
  }
  if (!z.allFinite()) {
    throw std::invalid_argument("sampler: response has non-finite values");
  }
  if (design.dim() != 2) {
    throw std::invalid_argument("sampler: only two-dimensional locations are supported");
  }
  if (n < design.mean_x.cols()) {
    throw std::invalid_argument("sampler: fewer observations than mean coefficients");
  }
  if (design.mean_x.rows() != n || design.var_x.rows() != n || design.kern_x.rows() != n) {
    throw std::invalid_argument("sampler: design blocks have inconsistent row counts");
  }
  auto check_block = [&](const Eigen::MatrixXd &m, const char *what) {
    if (m.cols() == 0 || !(m.col(0).array() == 1.0).all()) {
      throw std::invalid_argument(std::string("sampler: ") + what +
                                  " must start with an intercept column");
    }
    for (Eigen::Index c = 1; c < m.cols(); ++c) {
      if (m.col(c).maxCoeff() == m.col(c).minCoeff()) {
        throw std::invalid_argument(std::string("sampler: constant column ") +
                                    std::to_string(c) + " in " + what);
      }
    }
  };
  check_block(design.var_x, "variance covariates");
  check_block(design.kern_x, "kernel covariates");
  for (Eigen::Index c = 0; c < design.mean_x.cols(); ++c) {
    const bool constant = design.mean_x.col(c).maxCoeff() == design.mean_x.col(c).minCoeff();
    if (constant && !(design.mean_x.col(c).array() == 1.0).all()) {
      throw std::invalid_argument("sampler: constant non-intercept column in mean design");
    }
  }
  if (spec.kind == ModelKind::stationary &&
      (design.var_x.cols() != 1 || design.kern_x.cols() != 1)) {
    throw std::invalid_argument("sampler: stationary model takes no covariance covariates");
  }
}

namespace {

// Largest side of the bounding box of the locations.
double extent(const Design &design) {
  const Eigen::VectorXd span =
      design.coords.colwise().maxCoeff() - design.coords.colwise().minCoeff();
  return std::max(span.maxCoeff(), 1e-8);
}

} // namespace

ParamState initial_state(const Eigen::VectorXd &z, const Design &design,
                         const ModelSpec &spec, const Eigen::MatrixXd &psi_start) {
  ParamState st = shaped_state(spec, design);
  const Eigen::MatrixXd &x = design.mean_x;
  st.beta = x.colPivHouseholderQr().solve(z);
  const Eigen::VectorXd resid = z - x * st.beta;
  const double n = static_cast<double>(z.size());
  double var = n > 1 ? resid.squaredNorm() / (n - 1.0) : 0.0;
  if (!(var > 0.0)) {
    var = 1.0;
  }
  st.tau_sq = 0.1 * var;
  st.sigma0_sq = 0.9 * var;
  if (spec.kind == ModelKind::stationary) {
    const double side = extent(design) / 5.0;
    st.stationary = StationaryKernel{side * side, side * side, std::numbers::pi / 4.0};
  } else {
    st.kernel.set_psi(psi_start);
  }
  st.y_latent = z;
  return st;
}

namespace {

struct RwSlot {
  Component comp;
  double scale = 0.0;
  long window_accepted = 0;
  long window_proposed = 0;
  long all_accepted = 0;
  long all_proposed = 0;
  long post_accepted = 0;
  long post_proposed = 0;
};

void record(RwSlot &s, bool accepted, bool post_burn) {
  ++s.window_proposed;
  ++s.all_proposed;
  s.window_accepted += accepted;
  s.all_accepted += accepted;
  if (post_burn) {
    ++s.post_proposed;
    s.post_accepted += accepted;
  }
}

} // namespace

PosteriorChain run_sampler4(const Eigen::VectorXd &z, const Design &design,
                            const ModelSpec &spec, const Hyperparams &hp,
                            const ChainConfig &cfg,
                            const std::optional<Eigen::MatrixXd> &sigma_hat) {
  hp.validate();
  cfg.validate(design.dim());
  check_inputs(z, design, spec);
  const bool stationary = spec.kind == ModelKind::stationary;
  const Eigen::Index d = design.dim();

  PosteriorChain chain;
  if (!stationary) {
    if (!sigma_hat) {
      throw std::invalid_argument("sampler: nonstationary model needs the anisotropy estimate");
    }
    if (sigma_hat->rows() != d || sigma_hat->cols() != d) {
      throw std::invalid_argument("sampler: anisotropy estimate has the wrong shape");
    }
    chain.psi_anchor = cfg.psi_scale_k * *sigma_hat;
  }

  Rng rng = make_rng(cfg.seed, 0);
  ParamState st = initial_state(z, design, spec, chain.psi_anchor);

  std::vector<RwSlot> slots;
  if (stationary) {
    slots.push_back({{Component::Kind::log_lambda1, 0, 0}, cfg.rw_scale_log_lambda});
    slots.push_back({{Component::Kind::log_lambda2, 0, 0}, cfg.rw_scale_log_lambda});
    slots.push_back({{Component::Kind::eta, 0, 0}, cfg.rw_scale_eta});
  } else {
    for (Eigen::Index c = 0; c < st.kernel.gamma.cols(); ++c) {
      for (Eigen::Index r = 0; r < st.kernel.gamma.rows(); ++r) {
        slots.push_back({{Component::Kind::gamma, r, c}, cfg.rw_scale_gamma});
      }
    }
  }
  const std::size_t first_alpha = slots.size();
  for (Eigen::Index i = 0; i < st.alpha_rest.size(); ++i) {
    slots.push_back({{Component::Kind::alpha, i, 0}, cfg.rw_scale_alpha});
  }
  long psi_accepted_all = 0, psi_accepted_post = 0;

  auto trace = [&](SweepStep s) {
    if (cfg.trace) {
      cfg.trace(s);
    }
  };

  const int retained = cfg.iterations - cfg.burn_in;
  chain.draws.reserve(static_cast<std::size_t>(retained));
  chain.log_posterior_trace.reserve(static_cast<std::size_t>(retained));

  for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
    const bool post_burn = sweep >= cfg.burn_in;
    try {
      // (1) beta with Y integrated out.
      trace(SweepStep::beta);
      st.beta = sample_beta_fc(rng, z, st, design, spec, hp, cfg.prior_only);

      // (2) covariance block against the collapsed likelihood.
      double current = log_target(z, design, spec, st, hp, cfg.prior_only);
      if (stationary) {
        trace(SweepStep::stationary_kernel);
        for (std::size_t k = 0; k < first_alpha; ++k) {
          record(slots[k],
                 mh_rw_update(rng, slots[k].comp, st, current, z, design, spec, hp,
                              slots[k].scale, cfg.prior_only),
                 post_burn);
        }
      } else {
        for (std::size_t k = 0; k < first_alpha; ++k) {
          trace(SweepStep::gamma);
          record(slots[k],
                 mh_rw_update(rng, slots[k].comp, st, current, z, design, spec, hp,
                              slots[k].scale, cfg.prior_only),
                 post_burn);
        }
        trace(SweepStep::psi);
        double psi_current = psi_log_target(z, design, spec, st, hp, cfg.prior_only);
        const bool acc = mh_psi_update(rng, st, psi_current, z, design, spec, hp,
                                       chain.psi_anchor, cfg.psi_df, cfg.prior_only);
        psi_accepted_all += acc;
        psi_accepted_post += acc && post_burn;
        if (acc) {
          current = log_target(z, design, spec, st, hp, cfg.prior_only);
        }
      }
      for (std::size_t k = first_alpha; k < slots.size(); ++k) {
        trace(SweepStep::alpha);
        record(slots[k],
               mh_rw_update(rng, slots[k].comp, st, current, z, design, spec, hp,
                            slots[k].scale, cfg.prior_only),
               post_burn);
      }

      // (3) latent process.
      trace(SweepStep::latent);
      if (cfg.prior_only) {
        st.y_latent = design.mean_x * st.beta;
      } else {
        st.y_latent = sample_y_fc(rng, z, st, design, spec);
      }

      // (4) nugget, (5) process scale.
      trace(SweepStep::tau2);
      st.tau_sq = sample_tau2_fc(rng, z, st.y_latent, hp, cfg.prior_only);
      trace(SweepStep::sigma02);
      st.sigma0_sq = sample_sigma02_fc(rng, st.y_latent, st, design, spec, hp, cfg.prior_only);
    } catch (const NumericalError &e) {
      throw NumericalError("sampler: sweep " + std::to_string(sweep) + ": " + e.what());
    }

    if (cfg.adapt && !post_burn && (sweep + 1) % cfg.adapt_window == 0) {
      for (RwSlot &s : slots) {
        const double rate =
            static_cast<double>(s.window_accepted) / static_cast<double>(s.window_proposed);
        if (rate > cfg.target_high) {
          s.scale *= cfg.adapt_factor;
        } else if (rate < cfg.target_low) {
          s.scale /= cfg.adapt_factor;
        }
        s.window_accepted = 0;
        s.window_proposed = 0;
      }
    }

    if (post_burn) {
      double lp = log_prior(st, spec, hp);
      if (!cfg.prior_only && std::isfinite(lp)) {
        lp += marginal_loglik(z, spec, st, design);
      }
      chain.draws.push_back(st);
      chain.log_posterior_trace.push_back(lp);
    }
  }

  const bool use_post = retained > 0;
  for (const RwSlot &s : slots) {
    AcceptStat a;
    a.name = s.comp.name();
    a.accepted = use_post ? s.post_accepted : s.all_accepted;
    a.proposed = use_post ? s.post_proposed : s.all_proposed;
    a.final_scale = s.scale;
    chain.accept.push_back(a);
  }
  if (!stationary) {
    AcceptStat a;
    a.name = "psi";
    a.accepted = use_post ? psi_accepted_post : psi_accepted_all;
    a.proposed = use_post ? retained : cfg.iterations;
    chain.accept.push_back(a);
  }
  return chain;
}

Eigen::MatrixXd mean_stationary_kernel(const PosteriorChain &chain) {
  if (chain.draws.empty()) {
    throw std::invalid_argument("mean_stationary_kernel: empty chain");
  }
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  for (const ParamState &s : chain.draws) {
    acc += stationary_kernel_matrix(s.stationary);
  }
  return acc / static_cast<double>(chain.draws.size());
}

namespace {

Design stationary_design(const Design &design) {
  Design out = design;
  out.var_x = design.var_x.leftCols(1);
  out.kern_x = design.kern_x.leftCols(1);
  return out;
}

} // namespace

PosteriorChain fit_model(const Eigen::VectorXd &z, const Design &design,
                         const ModelSpec &spec, const Hyperparams &hp,
                         const ChainConfig &cfg,
                         const std::optional<Eigen::MatrixXd> &sigma_hat) {
  if (spec.kind == ModelKind::stationary || sigma_hat) {
    return run_sampler4(z, design, spec, hp, cfg, sigma_hat);
  }
  ModelSpec pilot_spec = stationary_model(static_cast<int>(design.mean_x.cols()));
  pilot_spec.mean_covariates.clear();
  for (Eigen::Index c = 0; c < design.mean_x.cols(); ++c) {
    pilot_spec.mean_covariates.push_back(static_cast<int>(c));
  }
  pilot_spec.smoothness = spec.smoothness;
  pilot_spec.smoothness.mode = SmoothnessSpec::Mode::fixed;
  ChainConfig pilot_cfg = cfg;
  pilot_cfg.iterations = cfg.pilot_iterations;
  pilot_cfg.burn_in = cfg.pilot_iterations / 2;
  pilot_cfg.seed = derive_seed(cfg.seed, 1);
  pilot_cfg.trace = nullptr;
  const PosteriorChain pilot =
      run_sampler4(z, stationary_design(design), pilot_spec, hp, pilot_cfg);
  return run_sampler4(z, design, spec, hp, cfg, mean_stationary_kernel(pilot));
}

} // namespace covreg
