#pragma once

#include "covreg/dataset.hpp"
#include "covreg/model.hpp"
#include "covreg/priors.hpp"
#include "covreg/sampler.hpp"
#include "covreg/scoring.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace covreg {

struct HoldoutPlan {
  Eigen::Index n = 0;
  double fraction = 0.10;
  int count = 20;
  std::uint64_t seed = 0;
  std::vector<std::vector<Eigen::Index>> test_sets; // sorted indices per replicate

  Eigen::Index test_size() const;
  /// Complement of test_sets[r] in 0..n-1, ascending.
  std::vector<Eigen::Index> train_indices(int r) const;
};

/// `count` independent uniform draws without replacement of round(fraction n)
/// indices each. A training set of a single row is allowed with a warning.
HoldoutPlan make_holdout_sets(Eigen::Index n, double fraction, int count, std::uint64_t seed);

struct Tally {
  std::vector<int> wins; // per model
  int ties = 0;          // replicates whose best value is shared; not awarded
};

struct ScoreReport {
  std::vector<std::string> models;
  /// scores[r][m] for replicate r and model m.
  std::vector<std::vector<Scores>> scores;
  Tally mspe;
  Tally crps;
  Tally log_score;

  /// Rows replicate,model,mspe,crps,log_score followed by a tally block.
  std::string to_csv() const;
};

/// Tallies the best model per replicate and criterion: smallest MSPE,
/// largest CRPS, largest log score. Exact ties go to the ties column.
ScoreReport tally_scores(std::vector<std::string> models,
                         std::vector<std::vector<Scores>> scores);

/// Scores already-fitted chains: chains[m][r] for model m on replicate r of
/// `plan`, with `data` the full dataset (standardization is refitted on each
/// replicate's training rows).
ScoreReport score_report(const std::vector<std::vector<PosteriorChain>> &chains,
                         const HoldoutPlan &plan, const SpatialDataset &data,
                         const std::vector<ModelSpec> &specs,
                         const std::vector<std::string> &standardize);

/// Training/test split of one replicate with the covariates standardized by
/// the training rows only.
struct ReplicateData {
  SpatialDataset train;
  SpatialDataset test;
};
ReplicateData split_replicate(const SpatialDataset &data, const HoldoutPlan &plan, int r,
                              const std::vector<std::string> &standardize);

/// Full protocol: per replicate, fit every model on the training rows and
/// score it on the test rows. Stationary models are fitted first; their
/// posterior-mean anisotropy anchors the Psi proposal of the nonstationary
/// models on the same replicate (a pilot run is used when no stationary
/// model is listed). Chain seeds are derived from cfg.seed, replicate and
/// model position.
ScoreReport run_holdout_evaluation(const SpatialDataset &data, const HoldoutPlan &plan,
                                   const std::vector<ModelSpec> &specs,
                                   const Hyperparams &hp, const ChainConfig &cfg,
                                   const std::vector<std::string> &standardize);

} // namespace covreg
