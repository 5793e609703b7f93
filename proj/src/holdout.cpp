#include "covreg/holdout.hpp"

#include "covreg/io.hpp"
#include "covreg/log.hpp"
#include "covreg/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace covreg {

Eigen::Index HoldoutPlan::test_size() const {
  return static_cast<Eigen::Index>(std::llround(fraction * static_cast<double>(n)));
}

std::vector<Eigen::Index> HoldoutPlan::train_indices(int r) const {
  const auto &test = test_sets.at(static_cast<std::size_t>(r));
  std::vector<Eigen::Index> out;
  out.reserve(static_cast<std::size_t>(n) - test.size());
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (k < test.size() && test[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

HoldoutPlan make_holdout_sets(Eigen::Index n, double fraction, int count, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("holdout: fraction must be in (0, 1)");
  }
  if (count < 1) {
    throw std::invalid_argument("holdout: count must be positive");
  }
  HoldoutPlan plan;
  plan.n = n;
  plan.fraction = fraction;
  plan.count = count;
  plan.seed = seed;
  const Eigen::Index j = plan.test_size();
  if (j < 1 || j >= n) {
    throw std::invalid_argument("holdout: test size " + std::to_string(j) +
                                " is degenerate for n = " + std::to_string(n));
  }
  if (n - j == 1) {
    warn("holdout: training set has a single row");
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (int r = 0; r < count; ++r) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first j entries are a uniform subset.
    for (Eigen::Index k = 0; k < j; ++k) {
      std::uniform_int_distribution<Eigen::Index> pick(k, n - 1);
      std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<Eigen::Index> test(idx.begin(), idx.begin() + j);
    std::sort(test.begin(), test.end());
    plan.test_sets.push_back(std::move(test));
  }
  return plan;
}

namespace {

Tally tally(const std::vector<std::vector<Scores>> &scores, std::size_t n_models,
            double Scores::*field, bool larger_better) {
  Tally t;
  t.wins.assign(n_models, 0);
  for (const auto &row : scores) {
    std::size_t best = 0;
    int n_best = 1;
    for (std::size_t m = 1; m < row.size(); ++m) {
      const double v = row[m].*field;
      const double b = row[best].*field;
      if (v == b) {
        ++n_best;
      } else if (larger_better ? v > b : v < b) {
        best = m;
        n_best = 1;
      }
    }
    if (n_best > 1) {
      ++t.ties;
    } else {
      ++t.wins[best];
    }
  }
  return t;
}

} // namespace

ScoreReport tally_scores(std::vector<std::string> models,
                         std::vector<std::vector<Scores>> scores) {
  for (const auto &row : scores) {
    if (row.size() != models.size()) {
      throw std::invalid_argument("score report: replicate scored on a different model set");
    }
  }
  if (models.empty()) {
    throw std::invalid_argument("score report: no models");
  }
  ScoreReport rep;
  rep.models = std::move(models);
  rep.scores = std::move(scores);
  rep.mspe = tally(rep.scores, rep.models.size(), &Scores::mspe, false);
  rep.crps = tally(rep.scores, rep.models.size(), &Scores::crps, true);
  rep.log_score = tally(rep.scores, rep.models.size(), &Scores::log_score, true);
  return rep;
}

std::string ScoreReport::to_csv() const {
  std::ostringstream out;
  out << "replicate,model,mspe,crps,log_score\n";
  for (std::size_t r = 0; r < scores.size(); ++r) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      const Scores &s = scores[r][m];
      out << r + 1 << ',' << models[m] << ',' << format_double(s.mspe) << ','
          << format_double(s.crps) << ',' << format_double(s.log_score) << '\n';
    }
  }
  out << "\ncriterion";
  for (const auto &m : models) {
    out << ',' << m;
  }
  out << ",ties\n";
  auto line = [&](const char *name, const Tally &t) {
    out << name;
    for (int w : t.wins) {
      out << ',' << w;
    }
    out << ',' << t.ties << '\n';
  };
  line("mspe", mspe);
  line("crps", crps);
  line("log_score", log_score);
  return out.str();
}

ReplicateData split_replicate(const SpatialDataset &data, const HoldoutPlan &plan, int r,
                              const std::vector<std::string> &standardize) {
  if (plan.n != data.size()) {
    throw std::invalid_argument("holdout: plan was made for a different dataset size");
  }
  const auto &test_idx = plan.test_sets.at(static_cast<std::size_t>(r));
  ReplicateData out;
  // Standardization parameters are always fitted on raw training values.
  SpatialDataset raw = data;
  if (!raw.standardization.empty()) {
    throw std::invalid_argument("holdout: dataset must hold raw covariates");
  }
  out.train = raw.subset(plan.train_indices(r));
  out.test = raw.subset(test_idx);
  if (!standardize.empty()) {
    out.train = standardize_covariates(out.train, standardize);
    out.test = apply_standardization(out.test, out.train.standardization);
  }
  return out;
}

ScoreReport score_report(const std::vector<std::vector<PosteriorChain>> &chains,
                         const HoldoutPlan &plan, const SpatialDataset &data,
                         const std::vector<ModelSpec> &specs,
                         const std::vector<std::string> &standardize) {
  if (chains.size() != specs.size()) {
    throw std::invalid_argument("score report: one chain list per model is required");
  }
  for (const auto &per_model : chains) {
    if (per_model.size() != plan.test_sets.size()) {
      throw std::invalid_argument("score report: chains do not match the plan");
    }
  }
  std::vector<std::vector<Scores>> scores(plan.test_sets.size());
  for (std::size_t r = 0; r < plan.test_sets.size(); ++r) {
    const ReplicateData rd = split_replicate(data, plan, static_cast<int>(r), standardize);
    for (std::size_t m = 0; m < specs.size(); ++m) {
      const Design train = bind(rd.train, specs[m]);
      const Design test = bind(rd.test, specs[m]);
      scores[r].push_back(score_draws(chains[m][r].draws, train.response, test.response,
                                      train, test, specs[m]));
    }
  }
  std::vector<std::string> names;
  for (const auto &s : specs) {
    names.push_back(s.name);
  }
  return tally_scores(std::move(names), std::move(scores));
}

ScoreReport run_holdout_evaluation(const SpatialDataset &data, const HoldoutPlan &plan,
                                   const std::vector<ModelSpec> &specs,
                                   const Hyperparams &hp, const ChainConfig &cfg,
                                   const std::vector<std::string> &standardize) {
  if (specs.empty()) {
    throw std::invalid_argument("evaluate: no models");
  }
  if (data.response.size() != data.size()) {
    throw std::invalid_argument("evaluate: dataset has no response");
  }
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_partition(order.begin(), order.end(), [&](std::size_t m) {
    return specs[m].kind == ModelKind::stationary;
  });

  std::vector<std::vector<Scores>> scores(plan.test_sets.size(),
                                          std::vector<Scores>(specs.size()));
  for (std::size_t r = 0; r < plan.test_sets.size(); ++r) {
    const ReplicateData rd = split_replicate(data, plan, static_cast<int>(r), standardize);
    std::optional<Eigen::MatrixXd> sigma_hat;
    for (std::size_t m : order) {
      const Design train = bind(rd.train, specs[m]);
      const Design test = bind(rd.test, specs[m]);
      ChainConfig c = cfg;
      c.seed = derive_seed(cfg.seed, 1000 * (r + 1) + m);
      const PosteriorChain chain = fit_model(train.response, train, specs[m], hp, c, sigma_hat);
      if (specs[m].kind == ModelKind::stationary && !sigma_hat) {
        sigma_hat = mean_stationary_kernel(chain);
      }
      scores[r][m] =
          score_draws(chain.draws, train.response, test.response, train, test, specs[m]);
    }
  }
  std::vector<std::string> names;
  for (const auto &s : specs) {
    names.push_back(s.name);
  }
  return tally_scores(std::move(names), std::move(scores));
}

} // namespace covreg
