#pragma once

#include "covreg/dataset.hpp"
#include "covreg/model.hpp"
#include "covreg/random.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace covreg {

struct SimulatedResponse {
  Eigen::VectorXd y; // latent process, mean zero
  Eigen::VectorXd z; // X beta + y + noise
};

/// Y ~ N(0, Omega), eps ~ N(0, tau^2 I), z = X beta + Y + eps.
SimulatedResponse simulate_response(Rng &rng, const Design &design, const ParamState &state,
                                    const ModelSpec &spec);

/// Copy of `data` whose response is replaced by a draw from the model.
SpatialDataset simulate_dataset(Rng &rng, const SpatialDataset &data, const ParamState &state,
                                const ModelSpec &spec);

/// Smooth covariate surface on [0, 10]^2, roughly standardized; used by the
/// synthetic benchmark.
double benchmark_covariate(double lon, double lat);

struct SyntheticBenchmark {
  SpatialDataset data; // one covariate "x1", mean terms {x1}
  ModelSpec spec;      // FNS-M2 on that dataset
  ParamState truth;
};

struct BenchmarkOptions {
  Eigen::Index n = 150;
  double gamma_scale = 0.0;   // Gamma = gamma_scale * [[1, 1.5], [-0.5, 1]]
  double alpha1 = 0.8;
  Eigen::Vector2d beta{1.0, 0.5};
  double tau_sq = 0.05;
  double sigma0_sq = 1.0;
  Eigen::Matrix2d psi{{1.0, 0.3}, {0.3, 0.6}};
};

/// Uniform random sites on [0, 10]^2 with covariate benchmark_covariate and a
/// response simulated from the FNS-M2 state given by `opt`.
SyntheticBenchmark make_synthetic_benchmark(std::uint64_t seed, const BenchmarkOptions &opt);

} // namespace covreg
