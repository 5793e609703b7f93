#include "covreg/simulate.hpp"

#include "covreg/covariance.hpp"

#include <cmath>
#include <stdexcept>

namespace covreg {

SimulatedResponse simulate_response(Rng &rng, const Design &design, const ParamState &state,
                                    const ModelSpec &spec) {
  if (!(state.tau_sq >= 0.0)) {
    throw std::invalid_argument("simulate: tau^2 must be nonnegative");
  }
  const Eigen::Index n = design.size();
  const Eigen::MatrixXd omega = build_cov_matrix(design, spec, state);
  SimulatedResponse out;
  out.y = sample_mvn_psd(rng, Eigen::VectorXd::Zero(n), omega);
  out.z = design.mean_x * state.beta + out.y +
          std::sqrt(state.tau_sq) * standard_normal_vector(rng, n);
  return out;
}

SpatialDataset simulate_dataset(Rng &rng, const SpatialDataset &data, const ParamState &state,
                                const ModelSpec &spec) {
  SpatialDataset out = data;
  out.response = simulate_response(rng, bind(data, spec), state, spec).z;
  return out;
}

double benchmark_covariate(double lon, double lat) {
  return 1.2 * std::sin(0.45 * lon + 0.2) * std::cos(0.3 * lat - 0.4) + 0.12 * (lat - 5.0);
}

SyntheticBenchmark make_synthetic_benchmark(std::uint64_t seed, const BenchmarkOptions &opt) {
  if (opt.n < 3) {
    throw std::invalid_argument("benchmark: need at least three sites");
  }
  Rng rng = make_rng(seed, 0);
  SyntheticBenchmark b;
  SpatialDataset &ds = b.data;
  ds.locations.resize(opt.n, 2);
  ds.covariates.resize(opt.n, 1);
  for (Eigen::Index i = 0; i < opt.n; ++i) {
    ds.locations(i, 0) = 10.0 * uniform01(rng);
    ds.locations(i, 1) = 10.0 * uniform01(rng);
    ds.covariates(i, 0) = benchmark_covariate(ds.locations(i, 0), ds.locations(i, 1));
  }
  ds.covariate_names = {"x1"};
  ds.mean_terms = {"x1"};
  b.spec = full_nonstationary_model(2, 2);

  ParamState &t = b.truth;
  t.beta = opt.beta;
  t.tau_sq = opt.tau_sq;
  t.sigma0_sq = opt.sigma0_sq;
  t.alpha_rest = Eigen::VectorXd::Constant(1, opt.alpha1);
  t.kernel.set_psi(opt.psi);
  t.kernel.gamma = opt.gamma_scale * Eigen::Matrix2d{{1.0, 1.5}, {-0.5, 1.0}};

  Rng sim_rng = make_rng(seed, 1);
  const SimulatedResponse r = simulate_response(sim_rng, bind(ds, b.spec), t, b.spec);
  ds.response = r.z;
  t.y_latent = r.y + bind(ds, b.spec).mean_x * t.beta;
  return b;
}

} // namespace covreg
