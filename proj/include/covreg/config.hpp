#pragma once

#include "covreg/dataset.hpp"
#include "covreg/model.hpp"
#include "covreg/priors.hpp"
#include "covreg/sampler.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace covreg {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Settings for every subcommand, read from flat "key = value" text. Lines
/// starting with '#' are comments. Unknown keys are errors. Relative paths
/// are resolved against the directory of the config file.
struct RunConfig {
  std::string data;
  Schema schema;
  std::vector<std::string> standardize;
  std::string elevation_grid;
  std::string slope_column = "slope";
  double slope_delta = 5.0 / 6.0;

  std::string model = "fns-m2";
  std::vector<int> mean_covariates;     // custom model; empty means all
  std::vector<int> variance_covariates; // custom model
  std::vector<int> kernel_covariates;   // custom and rns-m3 (default {1})
  double nu = 0.5;

  Hyperparams hp;
  ChainConfig chain;

  double holdout_fraction = 0.10;
  int holdout_count = 20;
  std::uint64_t holdout_seed = 1;
  std::vector<std::string> evaluate_models{"s-m1", "fns-m2"};

  std::string chain_file;
  std::string test_data;
  double level = 0.05;

  std::string grid;
  std::vector<Eigen::Vector2d> reference_points;

  std::map<std::string, std::vector<double>> truth; // true_* keys for simulate

  std::string output = ".";
};

RunConfig parse_config(const std::string &text, const std::string &base_dir = "");
RunConfig load_config(const std::string &path);

/// ModelSpec for a named model ("s-m1", "fns-m2", "rns-m3", "custom") on a
/// dataset with q mean columns and p covariance columns.
ModelSpec make_model_spec(const RunConfig &cfg, const std::string &name, int q, int p);

/// True state for `simulate` from the true_* keys, shaped for `design`.
ParamState truth_state(const RunConfig &cfg, const ModelSpec &spec, const Design &design);

} // namespace covreg
