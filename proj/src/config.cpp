#include "covreg/config.hpp"

#include "covreg/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace covreg {

namespace {

double to_double(const std::string &key, const std::string &v) {
  char *end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

long long to_int(const std::string &key, const std::string &v) {
  const double x = to_double(key, v);
  if (x != std::floor(x)) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  }
  return static_cast<long long>(x);
}

bool to_bool(const std::string &key, const std::string &v) {
  if (v == "true" || v == "1" || v == "yes") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    return false;
  }
  throw ConfigError("config: '" + key + "' expects true/false, got '" + v + "'");
}

std::vector<std::string> to_list(const std::string &v) {
  std::vector<std::string> out;
  for (auto &s : split(v, ',')) {
    if (!s.empty()) {
      out.push_back(s);
    }
  }
  return out;
}

std::vector<double> to_doubles(const std::string &key, const std::string &v) {
  std::vector<double> out;
  for (const auto &s : to_list(v)) {
    out.push_back(to_double(key, s));
  }
  return out;
}

std::vector<int> to_ints(const std::string &key, const std::string &v) {
  std::vector<int> out;
  for (const auto &s : to_list(v)) {
    out.push_back(static_cast<int>(to_int(key, s)));
  }
  return out;
}

std::string resolve(const std::string &base, const std::string &p) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) {
    return p;
  }
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

} // namespace

RunConfig parse_config(const std::string &text, const std::string &base_dir) {
  RunConfig c;
  using Setter = std::function<void(const std::string &, const std::string &)>;
  auto path = [&](std::string &dst) {
    return Setter([&dst, &base_dir](const std::string &, const std::string &v) {
      dst = resolve(base_dir, v);
    });
  };
  auto num = [](double &dst) {
    return Setter([&dst](const std::string &k, const std::string &v) { dst = to_double(k, v); });
  };
  auto integer = [](int &dst) {
    return Setter([&dst](const std::string &k, const std::string &v) {
      dst = static_cast<int>(to_int(k, v));
    });
  };
  auto str = [](std::string &dst) {
    return Setter([&dst](const std::string &, const std::string &v) { dst = v; });
  };
  auto list = [](std::vector<std::string> &dst) {
    return Setter([&dst](const std::string &, const std::string &v) { dst = to_list(v); });
  };
  auto ints = [](std::vector<int> &dst) {
    return Setter([&dst](const std::string &k, const std::string &v) { dst = to_ints(k, v); });
  };
  auto flag = [](bool &dst) {
    return Setter([&dst](const std::string &k, const std::string &v) { dst = to_bool(k, v); });
  };

  std::map<std::string, Setter> keys{
      {"data", path(c.data)},
      {"lon", str(c.schema.lon)},
      {"lat", str(c.schema.lat)},
      {"response", str(c.schema.response)},
      {"covariates", list(c.schema.covariates)},
      {"mean_terms", list(c.schema.mean_terms)},
      {"log_response", flag(c.schema.log_response)},
      {"standardize", list(c.standardize)},
      {"elevation_grid", path(c.elevation_grid)},
      {"slope_column", str(c.slope_column)},
      {"slope_delta", num(c.slope_delta)},
      {"model", str(c.model)},
      {"mean_covariates", ints(c.mean_covariates)},
      {"variance_covariates", ints(c.variance_covariates)},
      {"kernel_covariates", ints(c.kernel_covariates)},
      {"nu", num(c.nu)},
      {"c_beta_sq", num(c.hp.c_beta_sq)},
      {"a_tau", num(c.hp.a_tau)},
      {"b_tau", num(c.hp.b_tau)},
      {"a_sigma", num(c.hp.a_sigma)},
      {"b_sigma", num(c.hp.b_sigma)},
      {"c_alpha_sq", num(c.hp.c_alpha_sq)},
      {"s1_sq", num(c.hp.s1_sq)},
      {"s2_sq", num(c.hp.s2_sq)},
      {"c_gamma_sq", num(c.hp.c_gamma_sq)},
      {"iterations", integer(c.chain.iterations)},
      {"burn_in", integer(c.chain.burn_in)},
      {"seed", Setter([&c](const std::string &k, const std::string &v) {
         c.chain.seed = static_cast<std::uint64_t>(to_int(k, v));
       })},
      {"psi_k", num(c.chain.psi_scale_k)},
      {"psi_df", num(c.chain.psi_df)},
      {"adapt", flag(c.chain.adapt)},
      {"rw_scale_gamma", num(c.chain.rw_scale_gamma)},
      {"rw_scale_alpha", num(c.chain.rw_scale_alpha)},
      {"rw_scale_log_lambda", num(c.chain.rw_scale_log_lambda)},
      {"rw_scale_eta", num(c.chain.rw_scale_eta)},
      {"pilot_iterations", integer(c.chain.pilot_iterations)},
      {"holdout_fraction", num(c.holdout_fraction)},
      {"holdout_count", integer(c.holdout_count)},
      {"holdout_seed", Setter([&c](const std::string &k, const std::string &v) {
         c.holdout_seed = static_cast<std::uint64_t>(to_int(k, v));
       })},
      {"evaluate_models", list(c.evaluate_models)},
      {"chain", path(c.chain_file)},
      {"test_data", path(c.test_data)},
      {"level", num(c.level)},
      {"grid", path(c.grid)},
      {"reference_points", Setter([&c](const std::string &k, const std::string &v) {
         c.reference_points.clear();
         for (const auto &pt : split(v, ';')) {
           const auto xy = split(pt, ':');
           if (xy.size() != 2) {
             throw ConfigError("config: reference_points expects lon:lat;lon:lat");
           }
           c.reference_points.emplace_back(to_double(k, xy[0]), to_double(k, xy[1]));
         }
       })},
      {"output", path(c.output)},
  };
  for (const char *t : {"true_beta", "true_tau2", "true_sigma0_2", "true_alpha", "true_gamma",
                        "true_psi", "true_lambda", "true_eta"}) {
    keys.emplace(t, Setter([&c](const std::string &k, const std::string &v) {
                   c.truth[k] = to_doubles(k, v);
                 }));
  }

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') {
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": unknown key '" + key +
                        "'");
    }
    it->second(key, value);
  }
  return c;
}

RunConfig load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

ModelSpec make_model_spec(const RunConfig &cfg, const std::string &name, int q, int p) {
  ModelSpec spec;
  if (name == "s-m1") {
    spec = stationary_model(q);
  } else if (name == "fns-m2") {
    spec = full_nonstationary_model(q, p);
  } else if (name == "rns-m3") {
    spec = reduced_nonstationary_model(
        q, cfg.kernel_covariates.empty() ? std::vector<int>{1} : cfg.kernel_covariates);
  } else if (name == "custom") {
    spec = full_nonstationary_model(q, p);
    spec.name = "custom";
    spec.variance_covariates = cfg.variance_covariates;
    spec.kernel_covariates = cfg.kernel_covariates;
  } else {
    throw ConfigError("unknown model '" + name + "' (expected s-m1, fns-m2, rns-m3, custom)");
  }
  if (!cfg.mean_covariates.empty()) {
    spec.mean_covariates = cfg.mean_covariates;
  }
  spec.smoothness.nu_fixed = cfg.nu;
  spec.validate(q, p);
  return spec;
}

ParamState truth_state(const RunConfig &cfg, const ModelSpec &spec, const Design &design) {
  ParamState st = shaped_state(spec, design);
  auto get = [&](const std::string &key, Eigen::Index size) {
    const auto it = cfg.truth.find(key);
    if (it == cfg.truth.end()) {
      throw ConfigError("config: simulate needs '" + key + "'");
    }
    if (static_cast<Eigen::Index>(it->second.size()) != size) {
      throw ConfigError("config: '" + key + "' needs " + std::to_string(size) + " values");
    }
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(it->second.data(), size));
  };
  st.beta = get("true_beta", st.beta.size());
  st.tau_sq = get("true_tau2", 1)(0);
  st.sigma0_sq = get("true_sigma0_2", 1)(0);
  if (st.alpha_rest.size() > 0) {
    st.alpha_rest = get("true_alpha", st.alpha_rest.size());
  }
  if (spec.kind == ModelKind::stationary) {
    const Eigen::VectorXd l = get("true_lambda", 2);
    st.stationary = {l(0), l(1), get("true_eta", 1)(0)};
  } else {
    const Eigen::Index r = st.kernel.gamma.rows();
    const Eigen::Index k = st.kernel.gamma.cols();
    const Eigen::VectorXd g = get("true_gamma", r * k);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        st.kernel.gamma(i, j) = g(i * k + j);
      }
    }
    const Eigen::VectorXd psi = get("true_psi", 3);
    st.kernel.psi11 = psi(0);
    st.kernel.psi22 = psi(1);
    st.kernel.rho = psi(2);
    st.kernel.psi(); // validates
  }
  return st;
}

} // namespace covreg
