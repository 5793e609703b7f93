#include "covreg/holdout.hpp"
#include "covreg/log.hpp"
#include "covreg/simulate.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace covreg;

TEST(HoldoutPlan, ProtocolConstants) {
  const HoldoutPlan plan = make_holdout_sets(217, 0.10, 20, 3);
  EXPECT_EQ(plan.test_size(), 22);
  ASSERT_EQ(plan.test_sets.size(), 20u);
  for (int r = 0; r < 20; ++r) {
    const auto &t = plan.test_sets[static_cast<std::size_t>(r)];
    EXPECT_EQ(t.size(), 22u);
    EXPECT_EQ(std::set<Eigen::Index>(t.begin(), t.end()).size(), 22u);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    EXPECT_GE(t.front(), 0);
    EXPECT_LT(t.back(), 217);
    const auto train = plan.train_indices(r);
    EXPECT_EQ(train.size(), 195u);
    std::set<Eigen::Index> all(train.begin(), train.end());
    all.insert(t.begin(), t.end());
    EXPECT_EQ(all.size(), 217u);
  }
  EXPECT_NE(plan.test_sets[0], plan.test_sets[1]);
}

TEST(HoldoutPlan, Deterministic) {
  EXPECT_EQ(make_holdout_sets(50, 0.2, 5, 9).test_sets, make_holdout_sets(50, 0.2, 5, 9).test_sets);
  EXPECT_NE(make_holdout_sets(50, 0.2, 5, 9).test_sets,
            make_holdout_sets(50, 0.2, 5, 10).test_sets);
}

TEST(HoldoutPlan, UniformInclusion) {
  const HoldoutPlan plan = make_holdout_sets(20, 0.25, 4000, 1);
  std::vector<int> hits(20, 0);
  for (const auto &t : plan.test_sets) {
    for (auto i : t) {
      ++hits[static_cast<std::size_t>(i)];
    }
  }
  // Each index is held out with probability 5/20.
  for (int h : hits) {
    EXPECT_NEAR(h / 4000.0, 0.25, 0.03);
  }
}

TEST(HoldoutPlan, SingleTrainingRowWarnsAndDegenerateThrows) {
  std::vector<std::string> seen;
  auto old = set_warning_sink([&](const std::string &m) { seen.push_back(m); });
  const HoldoutPlan plan = make_holdout_sets(10, 0.9, 2, 1);
  set_warning_sink(old);
  EXPECT_EQ(plan.train_indices(0).size(), 1u);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_THROW(make_holdout_sets(10, 0.01, 2, 1), std::invalid_argument);
  EXPECT_THROW(make_holdout_sets(10, 0.99, 2, 1), std::invalid_argument);
  EXPECT_THROW(make_holdout_sets(10, 1.5, 2, 1), std::invalid_argument);
  EXPECT_THROW(make_holdout_sets(10, 0.5, 0, 1), std::invalid_argument);
}

TEST(Tally, SingleModelWinsEverything) {
  std::vector<std::vector<Scores>> s(5, std::vector<Scores>{{1.0, -0.2, -3.0}});
  const ScoreReport rep = tally_scores({"a"}, s);
  EXPECT_EQ(rep.mspe.wins, std::vector<int>{5});
  EXPECT_EQ(rep.crps.wins, std::vector<int>{5});
  EXPECT_EQ(rep.log_score.wins, std::vector<int>{5});
  EXPECT_EQ(rep.mspe.ties, 0);
}

TEST(Tally, DirectionsAndTies) {
  std::vector<std::vector<Scores>> s = {
      {{1.0, -0.3, -5.0}, {2.0, -0.2, -4.0}}, // mspe: a, crps: b, log: b
      {{1.0, -0.3, -5.0}, {1.0, -0.3, -5.0}}, // all tied
      {{3.0, -0.1, -1.0}, {2.0, -0.4, -2.0}}, // mspe: b, crps: a, log: a
  };
  const ScoreReport rep = tally_scores({"a", "b"}, s);
  EXPECT_EQ(rep.mspe.wins, (std::vector<int>{1, 1}));
  EXPECT_EQ(rep.crps.wins, (std::vector<int>{1, 1}));
  EXPECT_EQ(rep.log_score.wins, (std::vector<int>{1, 1}));
  EXPECT_EQ(rep.mspe.ties, 1);
  for (const Tally *t : {&rep.mspe, &rep.crps, &rep.log_score}) {
    EXPECT_EQ(t->wins[0] + t->wins[1] + t->ties, 3);
  }
  const std::string csv = rep.to_csv();
  EXPECT_NE(csv.find("criterion,a,b,ties"), std::string::npos);
  EXPECT_NE(csv.find("mspe,1,1,1"), std::string::npos);
  EXPECT_THROW(tally_scores({"a", "b"}, {{{1, 1, 1}}}), std::invalid_argument);
}

TEST(SplitReplicate, StandardizationUsesTrainingRowsOnly) {
  BenchmarkOptions opt;
  opt.n = 40;
  const SyntheticBenchmark bm = make_synthetic_benchmark(2, opt);
  const HoldoutPlan plan = make_holdout_sets(40, 0.25, 3, 4);
  const ReplicateData rd = split_replicate(bm.data, plan, 1, {"x1"});
  ASSERT_EQ(rd.train.standardization.size(), 1u);
  const auto train_idx = plan.train_indices(1);
  Eigen::VectorXd raw(static_cast<Eigen::Index>(train_idx.size()));
  for (std::size_t k = 0; k < train_idx.size(); ++k) {
    raw(static_cast<Eigen::Index>(k)) = bm.data.covariates(train_idx[k], 0);
  }
  const double mean = raw.mean();
  const double sd = std::sqrt((raw.array() - mean).square().sum() / (raw.size() - 1.0));
  EXPECT_NEAR(rd.train.standardization[0].mean, mean, 1e-12);
  EXPECT_NEAR(rd.train.standardization[0].sd, sd, 1e-12);
  EXPECT_NEAR(rd.train.covariates.col(0).mean(), 0.0, 1e-10);
  EXPECT_EQ(rd.test.standardization[0].mean, rd.train.standardization[0].mean);
  EXPECT_EQ(rd.test.standardization[0].sd, rd.train.standardization[0].sd);
  const auto &t = plan.test_sets[1];
  EXPECT_NEAR(rd.test.covariates(0, 0), (bm.data.covariates(t[0], 0) - mean) / sd, 1e-12);
}

TEST(Evaluation, SmallEndToEnd) {
  BenchmarkOptions opt;
  opt.n = 30;
  opt.gamma_scale = 0.5;
  const SyntheticBenchmark bm = make_synthetic_benchmark(5, opt);
  const HoldoutPlan plan = make_holdout_sets(30, 0.1, 2, 6);
  ChainConfig cfg;
  cfg.iterations = 60;
  cfg.burn_in = 30;
  cfg.seed = 3;
  const ScoreReport rep = run_holdout_evaluation(
      bm.data, plan, {stationary_model(2), full_nonstationary_model(2, 2)}, Hyperparams{}, cfg,
      {});
  ASSERT_EQ(rep.scores.size(), 2u);
  for (const auto &row : rep.scores) {
    ASSERT_EQ(row.size(), 2u);
    for (const Scores &s : row) {
      EXPECT_TRUE(std::isfinite(s.mspe) && std::isfinite(s.crps) && std::isfinite(s.log_score));
      EXPECT_GE(s.mspe, 0.0);
      EXPECT_LE(s.crps, 0.0);
    }
  }
  for (const Tally *t : {&rep.mspe, &rep.crps, &rep.log_score}) {
    EXPECT_EQ(t->wins[0] + t->wins[1] + t->ties, 2);
  }
  const ScoreReport again = run_holdout_evaluation(
      bm.data, plan, {stationary_model(2), full_nonstationary_model(2, 2)}, Hyperparams{}, cfg,
      {});
  EXPECT_EQ(rep.to_csv(), again.to_csv());
}
