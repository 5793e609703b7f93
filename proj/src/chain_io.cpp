#include "covreg/chain_io.hpp"

#include "covreg/io.hpp"
#include "covreg/prediction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace covreg {

namespace {

// Flat parameter vector in chain_columns order, without log_post.
std::vector<double> flatten(const ParamState &s, const ModelSpec &spec) {
  std::vector<double> v(s.beta.data(), s.beta.data() + s.beta.size());
  v.push_back(s.tau_sq);
  v.push_back(s.sigma0_sq);
  v.insert(v.end(), s.alpha_rest.data(), s.alpha_rest.data() + s.alpha_rest.size());
  if (spec.kind == ModelKind::stationary) {
    v.push_back(s.stationary.lambda1);
    v.push_back(s.stationary.lambda2);
    v.push_back(s.stationary.eta);
  } else {
    for (Eigen::Index r = 0; r < s.kernel.gamma.rows(); ++r) {
      for (Eigen::Index c = 0; c < s.kernel.gamma.cols(); ++c) {
        v.push_back(s.kernel.gamma(r, c));
      }
    }
    v.push_back(s.kernel.psi11);
    v.push_back(s.kernel.psi22);
    v.push_back(s.kernel.rho);
  }
  return v;
}

void unflatten(const std::vector<double> &v, const ModelSpec &spec, ParamState &s) {
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < s.beta.size(); ++i) {
    s.beta(i) = v[k++];
  }
  s.tau_sq = v[k++];
  s.sigma0_sq = v[k++];
  for (Eigen::Index i = 0; i < s.alpha_rest.size(); ++i) {
    s.alpha_rest(i) = v[k++];
  }
  if (spec.kind == ModelKind::stationary) {
    s.stationary.lambda1 = v[k++];
    s.stationary.lambda2 = v[k++];
    s.stationary.eta = v[k++];
  } else {
    for (Eigen::Index r = 0; r < s.kernel.gamma.rows(); ++r) {
      for (Eigen::Index c = 0; c < s.kernel.gamma.cols(); ++c) {
        s.kernel.gamma(r, c) = v[k++];
      }
    }
    s.kernel.psi11 = v[k++];
    s.kernel.psi22 = v[k++];
    s.kernel.rho = v[k++];
  }
}

} // namespace

std::vector<std::string> chain_columns(const ModelSpec &spec, const ParamState &shape) {
  std::vector<std::string> cols;
  for (Eigen::Index i = 0; i < shape.beta.size(); ++i) {
    cols.push_back("beta_" + std::to_string(i));
  }
  cols.push_back("tau2");
  cols.push_back("sigma0_2");
  for (Eigen::Index i = 0; i < shape.alpha_rest.size(); ++i) {
    cols.push_back("alpha_" + std::to_string(i + 1));
  }
  if (spec.kind == ModelKind::stationary) {
    cols.insert(cols.end(), {"lambda1", "lambda2", "eta"});
  } else {
    for (Eigen::Index r = 0; r < shape.kernel.gamma.rows(); ++r) {
      for (Eigen::Index c = 0; c < shape.kernel.gamma.cols(); ++c) {
        cols.push_back("gamma_" + std::to_string(r + 1) + std::to_string(c + 1));
      }
    }
    cols.insert(cols.end(), {"psi_11", "psi_22", "rho"});
  }
  return cols;
}

std::string chain_to_csv(const PosteriorChain &chain, const ModelSpec &spec) {
  std::ostringstream out;
  if (chain.draws.empty()) {
    return "";
  }
  const auto cols = chain_columns(spec, chain.draws.front());
  for (const auto &c : cols) {
    out << c << ',';
  }
  out << "log_post\n";
  for (std::size_t i = 0; i < chain.draws.size(); ++i) {
    for (double v : flatten(chain.draws[i], spec)) {
      out << format_double(v) << ',';
    }
    const double lp = i < chain.log_posterior_trace.size() ? chain.log_posterior_trace[i] : NAN;
    out << format_double(lp) << '\n';
  }
  return out.str();
}

std::vector<ParamState> read_chain(const std::string &path, const ModelSpec &spec,
                                   const ParamState &shape) {
  const CsvTable t = read_csv(path);
  auto cols = chain_columns(spec, shape);
  cols.push_back("log_post");
  if (t.header != cols) {
    throw ParseError(path + ": chain columns do not match the configured model");
  }
  std::vector<ParamState> out;
  out.reserve(t.rows.size());
  std::vector<double> v(cols.size() - 1);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c + 1 < cols.size(); ++c) {
      v[c] = parse_cell(t.rows[r][c], path, r + 1, cols[c]);
    }
    ParamState s = shape;
    unflatten(v, spec, s);
    s.y_latent.resize(0);
    out.push_back(std::move(s));
  }
  if (out.empty()) {
    throw ParseError(path + ": chain has no draws");
  }
  return out;
}

std::vector<ParamSummary> summarize_chain(const std::vector<ParamState> &draws,
                                          const ModelSpec &spec) {
  if (draws.empty()) {
    throw std::invalid_argument("summarize_chain: empty chain");
  }
  auto cols = chain_columns(spec, draws.front());
  const bool ns = spec.kind == ModelKind::nonstationary && draws.front().kernel.dim() == 2;
  if (ns) {
    cols.push_back("psi_12");
  }
  std::vector<std::vector<double>> values(cols.size());
  for (const ParamState &s : draws) {
    auto v = flatten(s, spec);
    if (ns) {
      v.push_back(s.kernel.rho * std::sqrt(s.kernel.psi11 * s.kernel.psi22));
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      values[c].push_back(v[c]);
    }
  }
  std::vector<ParamSummary> out;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    ParamSummary p;
    p.name = cols[c];
    double acc = 0.0;
    for (double x : values[c]) {
      acc += x;
    }
    p.mean = acc / static_cast<double>(values[c].size());
    p.lower = empirical_quantile(values[c], 0.025);
    p.upper = empirical_quantile(values[c], 0.975);
    p.excludes_zero = p.lower > 0.0 || p.upper < 0.0;
    out.push_back(p);
  }
  return out;
}

std::string summary_to_csv(const std::vector<ParamSummary> &rows) {
  std::ostringstream out;
  out << "parameter,mean,lower_95,upper_95,excludes_zero\n";
  for (const auto &r : rows) {
    out << r.name << ',' << format_double(r.mean) << ',' << format_double(r.lower) << ','
        << format_double(r.upper) << ',' << (r.excludes_zero ? 1 : 0) << '\n';
  }
  return out.str();
}

} // namespace covreg
