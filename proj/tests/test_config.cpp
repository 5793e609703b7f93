#include "covreg/config.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace covreg;

TEST(Config, ParsesKeysAndResolvesPaths) {
  const RunConfig c = parse_config("# comment\n"
                                   "data = stations.csv\n"
                                   "response = precip\n"
                                   "covariates = elev, slope\n"
                                   "mean_terms = elev,slope,elev*slope\n"
                                   "log_response = true\n"
                                   "standardize = elev,slope\n"
                                   "model = rns-m3\n"
                                   "kernel_covariates = 2\n"
                                   "iterations = 500\n"
                                   "burn_in = 100\n"
                                   "seed = 77\n"
                                   "c_gamma_sq = 2.5\n"
                                   "holdout_count = 4\n"
                                   "evaluate_models = s-m1, rns-m3\n"
                                   "reference_points = -105.2:39.7; -104:38.5\n"
                                   "output = /tmp/out\n"
                                   "\n"
                                   "true_beta = 1, 2\n",
                                   "/data/run");
  EXPECT_EQ(c.data, "/data/run/stations.csv");
  EXPECT_EQ(c.output, "/tmp/out");
  EXPECT_EQ(c.schema.response, "precip");
  EXPECT_EQ(c.schema.covariates, (std::vector<std::string>{"elev", "slope"}));
  EXPECT_EQ(c.schema.mean_terms.size(), 3u);
  EXPECT_TRUE(c.schema.log_response);
  EXPECT_EQ(c.model, "rns-m3");
  EXPECT_EQ(c.kernel_covariates, std::vector<int>{2});
  EXPECT_EQ(c.chain.iterations, 500);
  EXPECT_EQ(c.chain.burn_in, 100);
  EXPECT_EQ(c.chain.seed, 77u);
  EXPECT_EQ(c.hp.c_gamma_sq, 2.5);
  EXPECT_EQ(c.holdout_count, 4);
  EXPECT_EQ(c.evaluate_models, (std::vector<std::string>{"s-m1", "rns-m3"}));
  ASSERT_EQ(c.reference_points.size(), 2u);
  EXPECT_EQ(c.reference_points[1], Eigen::Vector2d(-104, 38.5));
  EXPECT_EQ(c.truth.at("true_beta"), (std::vector<double>{1, 2}));
}

TEST(Config, Defaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c.chain.iterations, 10000);
  EXPECT_EQ(c.chain.psi_scale_k, 0.65);
  EXPECT_EQ(c.chain.psi_df, 4.0);
  EXPECT_EQ(c.chain.target_low, 0.20);
  EXPECT_EQ(c.chain.target_high, 0.40);
  EXPECT_EQ(c.holdout_fraction, 0.10);
  EXPECT_EQ(c.holdout_count, 20);
  EXPECT_NEAR(c.slope_delta, 5.0 / 6.0, 1e-15);
  EXPECT_EQ(c.level, 0.05);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("iterations = many\n"), ConfigError);
  EXPECT_THROW(parse_config("iterations = 2.5\n"), ConfigError);
  EXPECT_THROW(parse_config("adapt = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("just text\n"), ConfigError);
  EXPECT_THROW(parse_config("reference_points = 1;2\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST(Config, ModelSpecs) {
  RunConfig c = parse_config("");
  const ModelSpec s = make_model_spec(c, "s-m1", 4, 3);
  EXPECT_EQ(s.kind, ModelKind::stationary);
  EXPECT_EQ(s.mean_covariates.size(), 4u);
  const ModelSpec f = make_model_spec(c, "fns-m2", 4, 3);
  EXPECT_EQ(f.variance_covariates, (std::vector<int>{1, 2}));
  EXPECT_EQ(f.kernel_covariates, (std::vector<int>{1, 2}));
  const ModelSpec r = make_model_spec(c, "rns-m3", 4, 3);
  EXPECT_TRUE(r.variance_covariates.empty());
  EXPECT_EQ(r.kernel_covariates, std::vector<int>{1});
  c.variance_covariates = {2};
  c.kernel_covariates = {1, 2};
  c.nu = 1.5;
  const ModelSpec u = make_model_spec(c, "custom", 4, 3);
  EXPECT_EQ(u.variance_covariates, std::vector<int>{2});
  EXPECT_EQ(u.smoothness.nu_fixed, 1.5);
  EXPECT_THROW(make_model_spec(c, "other", 4, 3), ConfigError);
  c.kernel_covariates = {5};
  EXPECT_THROW(make_model_spec(c, "custom", 4, 3), std::invalid_argument);
}

TEST(Config, TruthState) {
  const RunConfig c = parse_config("true_beta = 1, 0.5\n"
                                   "true_tau2 = 0.05\n"
                                   "true_sigma0_2 = 1\n"
                                   "true_alpha = 0.8\n"
                                   "true_gamma = 1, 1.5, -0.5, 1\n"
                                   "true_psi = 1, 0.6, 0.3\n");
  Rng rng = make_rng(1, 0);
  const Design d = testutil::random_design(rng, 5, 2, 2, 2);
  const ModelSpec spec = full_nonstationary_model(2, 2);
  const ParamState st = truth_state(c, spec, d);
  EXPECT_EQ(st.beta, Eigen::Vector2d(1, 0.5));
  EXPECT_EQ(st.kernel.gamma(0, 1), 1.5);
  EXPECT_EQ(st.kernel.gamma(1, 0), -0.5);
  EXPECT_NEAR(st.kernel.psi()(0, 1), 0.3 * std::sqrt(0.6), 1e-15);
  const RunConfig missing = parse_config("true_beta = 1\n");
  EXPECT_THROW(truth_state(missing, spec, d), ConfigError);
}
