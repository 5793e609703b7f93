#include "covreg/cli.hpp"

#include "covreg/chain_io.hpp"
#include "covreg/config.hpp"
#include "covreg/dataset.hpp"
#include "covreg/fields.hpp"
#include "covreg/holdout.hpp"
#include "covreg/io.hpp"
#include "covreg/prediction.hpp"
#include "covreg/sampler.hpp"
#include "covreg/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace covreg {

namespace {

struct Overrides {
  std::string config;
  std::optional<long long> seed;
  std::optional<std::string> output;
  std::optional<std::string> model;
  std::optional<int> iterations;
  std::optional<int> burn_in;
};

RunConfig effective_config(const Overrides &o) {
  RunConfig cfg = load_config(o.config);
  if (o.seed) {
    cfg.chain.seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.output) {
    cfg.output = *o.output;
  }
  if (o.model) {
    cfg.model = *o.model;
  }
  if (o.iterations) {
    cfg.chain.iterations = *o.iterations;
  }
  if (o.burn_in) {
    cfg.chain.burn_in = *o.burn_in;
  }
  std::filesystem::create_directories(cfg.output);
  return cfg;
}

std::string out_path(const RunConfig &cfg, const std::string &name) {
  return (std::filesystem::path(cfg.output) / name).string();
}

// Loads a file with the configured schema, filling the slope column from the
// elevation grid when one is configured.
SpatialDataset load_with_slope(const RunConfig &cfg, const std::string &path,
                               bool with_response) {
  Schema schema = cfg.schema;
  if (!with_response) {
    schema.response.clear();
  }
  const auto &covs = cfg.schema.covariates;
  const auto slope_it = std::find(covs.begin(), covs.end(), cfg.slope_column);
  const bool derive_slope = !cfg.elevation_grid.empty() && slope_it != covs.end();
  if (derive_slope) {
    schema.covariates.erase(schema.covariates.begin() + (slope_it - covs.begin()));
  }
  schema.mean_terms = cfg.schema.mean_terms.empty() ? covs : cfg.schema.mean_terms;
  // Mean terms may mention the slope before it exists; validate after insertion.
  SpatialDataset ds;
  {
    Schema no_terms = schema;
    no_terms.mean_terms = {};
    ds = load_dataset(path, no_terms);
  }
  if (derive_slope) {
    const ElevationGrid grid = load_elevation_grid(cfg.elevation_grid);
    Eigen::VectorXd slope(ds.size());
    for (Eigen::Index i = 0; i < ds.size(); ++i) {
      slope(i) = compute_slope_gradient(grid, ds.locations(i, 0), ds.locations(i, 1),
                                        cfg.slope_delta);
    }
    ds = insert_covariate(ds, cfg.slope_column, slope,
                          static_cast<std::size_t>(slope_it - covs.begin()));
  }
  ds.mean_terms = schema.mean_terms;
  ds.mean_design();
  return ds;
}

SpatialDataset load_training(const RunConfig &cfg) {
  if (cfg.data.empty()) {
    throw ConfigError("config: 'data' is required");
  }
  if (cfg.schema.response.empty()) {
    throw ConfigError("config: 'response' is required");
  }
  SpatialDataset ds = load_with_slope(cfg, cfg.data, true);
  if (!cfg.standardize.empty()) {
    ds = standardize_covariates(ds, cfg.standardize);
  }
  return ds;
}

ModelSpec spec_for(const RunConfig &cfg, const SpatialDataset &ds, const std::string &name) {
  return make_model_spec(cfg, name, static_cast<int>(ds.mean_design().cols()),
                         static_cast<int>(ds.cov_covariates().cols()));
}

std::string chain_path(const RunConfig &cfg) {
  return cfg.chain_file.empty() ? out_path(cfg, "chain.csv") : cfg.chain_file;
}

int cmd_fit(const RunConfig &cfg) {
  const SpatialDataset ds = load_training(cfg);
  const ModelSpec spec = spec_for(cfg, ds, cfg.model);
  const Design design = bind(ds, spec);
  const PosteriorChain chain = fit_model(ds.response, design, spec, cfg.hp, cfg.chain);
  write_file_atomic(out_path(cfg, "chain.csv"), chain_to_csv(chain, spec));
  write_file_atomic(out_path(cfg, "summary.csv"),
                    summary_to_csv(summarize_chain(chain.draws, spec)));
  std::ostringstream acc;
  acc << "component,accept_rate,final_scale\n";
  for (const auto &a : chain.accept) {
    acc << a.name << ',' << format_double(a.rate()) << ',' << format_double(a.final_scale)
        << '\n';
  }
  write_file_atomic(out_path(cfg, "accept.csv"), acc.str());
  std::cout << "fit " << spec.name << ": " << chain.draws.size() << " draws written to "
            << out_path(cfg, "chain.csv") << '\n';
  return 0;
}

int cmd_predict(const RunConfig &cfg) {
  if (cfg.test_data.empty()) {
    throw ConfigError("config: predict needs 'test_data'");
  }
  const SpatialDataset train_ds = load_training(cfg);
  SpatialDataset test_ds = load_with_slope(cfg, cfg.test_data, false);
  test_ds = apply_standardization(test_ds, train_ds.standardization);
  const ModelSpec spec = spec_for(cfg, train_ds, cfg.model);
  const Design train = bind(train_ds, spec);
  const Design test = bind(test_ds, spec);
  const auto draws = read_chain(chain_path(cfg), spec, shaped_state(spec, train));
  Rng rng = make_rng(cfg.chain.seed, 2);
  const PredictiveSummary s =
      predict_chain(rng, draws, train_ds.response, train, test, spec, cfg.level);

  const SpatialDataset raw_test = load_with_slope(cfg, cfg.test_data, false);
  std::ostringstream out;
  out << "lon,lat";
  for (const auto &c : raw_test.covariate_names) {
    out << ',' << c;
  }
  out << ",pred_mean,lower,upper\n";
  for (Eigen::Index i = 0; i < raw_test.size(); ++i) {
    out << format_double(raw_test.locations(i, 0)) << ','
        << format_double(raw_test.locations(i, 1));
    for (Eigen::Index c = 0; c < raw_test.covariates.cols(); ++c) {
      out << ',' << format_double(raw_test.covariates(i, c));
    }
    out << ',' << format_double(s.mean(i)) << ',' << format_double(s.lower(i)) << ','
        << format_double(s.upper(i)) << '\n';
  }
  write_file_atomic(out_path(cfg, "predictions.csv"), out.str());
  std::cout << "predicted " << raw_test.size() << " locations\n";
  return 0;
}

int cmd_evaluate(const RunConfig &cfg, bool single_model) {
  if (cfg.data.empty() || cfg.schema.response.empty()) {
    throw ConfigError("config: evaluate needs 'data' and 'response'");
  }
  const SpatialDataset raw = load_with_slope(cfg, cfg.data, true);
  std::vector<ModelSpec> specs;
  const std::vector<std::string> names =
      single_model ? std::vector<std::string>{cfg.model} : cfg.evaluate_models;
  for (const auto &m : names) {
    specs.push_back(spec_for(cfg, raw, m));
  }
  const HoldoutPlan plan =
      make_holdout_sets(raw.size(), cfg.holdout_fraction, cfg.holdout_count, cfg.holdout_seed);
  const ScoreReport rep =
      run_holdout_evaluation(raw, plan, specs, cfg.hp, cfg.chain, cfg.standardize);
  write_file_atomic(out_path(cfg, "report.csv"), rep.to_csv());
  std::cout << "evaluated " << specs.size() << " model(s) on " << plan.count
            << " replicates\n";
  return 0;
}

int cmd_map(const RunConfig &cfg) {
  if (cfg.grid.empty()) {
    throw ConfigError("config: map needs 'grid'");
  }
  const SpatialDataset train_ds = load_training(cfg);
  const ModelSpec spec = spec_for(cfg, train_ds, cfg.model);
  const Design train = bind(train_ds, spec);
  const auto draws = read_chain(chain_path(cfg), spec, shaped_state(spec, train));
  SpatialDataset grid_ds = load_with_slope(cfg, cfg.grid, false);
  grid_ds = apply_standardization(grid_ds, train_ds.standardization);
  const LatticeDesign lattice = lattice_from_dataset(grid_ds, spec);
  const FieldExport f =
      export_fields(posterior_mean_state(draws, spec), lattice, spec, cfg.reference_points);
  write_file_atomic(out_path(cfg, "variance.csv"), f.variance.to_csv());
  for (std::size_t k = 0; k < f.correlations.size(); ++k) {
    write_file_atomic(out_path(cfg, "correlation_" + std::to_string(k + 1) + ".csv"),
                      f.correlations[k].to_csv());
  }
  std::cout << "wrote variance grid and " << f.correlations.size() << " correlation grid(s)\n";
  return 0;
}

int cmd_simulate(const RunConfig &cfg) {
  if (cfg.data.empty()) {
    throw ConfigError("config: simulate needs 'data' (locations and covariates)");
  }
  const SpatialDataset raw = load_with_slope(cfg, cfg.data, false);
  SpatialDataset ds = raw;
  if (!cfg.standardize.empty()) {
    ds = standardize_covariates(ds, cfg.standardize);
  }
  const ModelSpec spec = spec_for(cfg, ds, cfg.model);
  const ParamState truth = truth_state(cfg, spec, bind(ds, spec));
  Rng rng = make_rng(cfg.chain.seed, 3);
  SpatialDataset out = raw;
  out.response = simulate_dataset(rng, ds, truth, spec).response;
  write_dataset(out_path(cfg, "simulated.csv"), out,
                cfg.schema.response.empty() ? "response" : cfg.schema.response);
  std::cout << "simulated " << out.size() << " responses\n";
  return 0;
}

} // namespace

int cli_main(const std::vector<std::string> &args) {
  CLI::App app{"covreg: nonstationary covariance regression for spatial data", "covreg"};
  app.require_subcommand(1, 1);
  Overrides o;
  auto add_common = [&o](CLI::App *sub) {
    sub->add_option("--config", o.config, "Config file (key = value)")->required();
    sub->add_option("--seed", o.seed, "Random seed (overrides config)");
    sub->add_option("--output", o.output, "Output directory");
    sub->add_option("--model", o.model, "Model: s-m1, fns-m2, rns-m3 or custom")
        ->check(CLI::IsMember({"s-m1", "fns-m2", "rns-m3", "custom"}));
    sub->add_option("--iterations", o.iterations, "MCMC iterations")->check(CLI::PositiveNumber);
    sub->add_option("--burnin", o.burn_in, "Burn-in iterations")->check(CLI::NonNegativeNumber);
  };
  CLI::App *fit = app.add_subcommand("fit", "Run the sampler and write the chain and summary");
  CLI::App *predict = app.add_subcommand("predict", "Posterior predictive at test locations");
  CLI::App *evaluate = app.add_subcommand("evaluate", "Hold-out scoring of competing models");
  CLI::App *map = app.add_subcommand("map", "Variance and correlation grids");
  CLI::App *simulate = app.add_subcommand("simulate", "Simulate responses from a known state");
  for (CLI::App *s : {fit, predict, evaluate, map, simulate}) {
    add_common(s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  try {
    const RunConfig cfg = effective_config(o);
    if (fit->parsed()) {
      return cmd_fit(cfg);
    }
    if (predict->parsed()) {
      return cmd_predict(cfg);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(cfg, o.model.has_value());
    }
    if (map->parsed()) {
      return cmd_map(cfg);
    }
    return cmd_simulate(cfg);
  } catch (const std::exception &e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << msg << '\n';
    return 1;
  }
}

int cli_main(int argc, char **argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return cli_main(args);
}

} // namespace covreg
