#include "covreg/model.hpp"

#include "covreg/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace covreg {

namespace {

void check_index_set(const std::vector<int> &set, int lo, int hi, const char *what) {
  std::vector<int> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string("model: duplicate index in ") + what);
  }
  for (int c : set) {
    if (c < lo || c >= hi) {
      throw std::invalid_argument(std::string("model: index ") + std::to_string(c) +
                                  " out of range in " + what);
    }
  }
}

} // namespace

void ModelSpec::validate(int q, int p) const {
  if (mean_covariates.empty()) {
    throw std::invalid_argument("model: empty mean covariate set");
  }
  check_index_set(mean_covariates, 0, q, "mean covariates");
  check_index_set(variance_covariates, 1, p, "variance covariates");
  check_index_set(kernel_covariates, 1, p, "kernel covariates");
  if (kind == ModelKind::stationary &&
      (!variance_covariates.empty() || !kernel_covariates.empty())) {
    throw std::invalid_argument(
        "model: stationary model cannot have variance or kernel covariates");
  }
  if (smoothness.nu_fixed <= 0.0) {
    throw std::invalid_argument("model: nu_fixed must be positive");
  }
  if (smoothness.mode == SmoothnessSpec::Mode::regression &&
      smoothness.delta.size() != static_cast<Eigen::Index>(kernel_covariates.size() + 1)) {
    throw std::invalid_argument("model: smoothness delta must match kernel covariates");
  }
}

namespace {

std::vector<int> iota_vec(int from, int to) {
  std::vector<int> v(static_cast<std::size_t>(std::max(0, to - from)));
  std::iota(v.begin(), v.end(), from);
  return v;
}

} // namespace

ModelSpec stationary_model(int q) {
  ModelSpec spec;
  spec.name = "s-m1";
  spec.kind = ModelKind::stationary;
  spec.mean_covariates = iota_vec(0, q);
  return spec;
}

ModelSpec full_nonstationary_model(int q, int p) {
  ModelSpec spec;
  spec.name = "fns-m2";
  spec.kind = ModelKind::nonstationary;
  spec.mean_covariates = iota_vec(0, q);
  spec.variance_covariates = iota_vec(1, p);
  spec.kernel_covariates = iota_vec(1, p);
  return spec;
}

ModelSpec reduced_nonstationary_model(int q, std::vector<int> kernel_covariates) {
  ModelSpec spec;
  spec.name = "rns-m3";
  spec.kind = ModelKind::nonstationary;
  spec.mean_covariates = iota_vec(0, q);
  spec.kernel_covariates = std::move(kernel_covariates);
  return spec;
}

Design Design::subset(const std::vector<Eigen::Index> &rows) const {
  Design out;
  const auto n = static_cast<Eigen::Index>(rows.size());
  out.coords.resize(n, coords.cols());
  out.mean_x.resize(n, mean_x.cols());
  out.var_x.resize(n, var_x.cols());
  out.kern_x.resize(n, kern_x.cols());
  if (response.size() > 0) {
    out.response.resize(n);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index r = rows[static_cast<std::size_t>(k)];
    if (r < 0 || r >= size()) {
      throw std::out_of_range("Design::subset: row index out of range");
    }
    out.coords.row(k) = coords.row(r);
    out.mean_x.row(k) = mean_x.row(r);
    out.var_x.row(k) = var_x.row(r);
    out.kern_x.row(k) = kern_x.row(r);
    if (response.size() > 0) {
      out.response(k) = response(r);
    }
  }
  return out;
}

Site site_of(const Design &design, Eigen::Index i) {
  return Site{design.coords.row(i).transpose(), design.var_x.row(i).transpose(),
              design.kern_x.row(i).transpose()};
}

ParamState shaped_state(const ModelSpec &spec, const Design &design) {
  ParamState st;
  st.beta = Eigen::VectorXd::Zero(design.mean_x.cols());
  st.alpha_rest = Eigen::VectorXd::Zero(std::max<Eigen::Index>(0, design.var_x.cols() - 1));
  const Eigen::Index pk = spec.kind == ModelKind::stationary ? 1 : design.kern_x.cols();
  st.kernel.gamma = Eigen::MatrixXd::Zero(design.dim(), pk);
  st.y_latent = Eigen::VectorXd::Zero(design.size());
  return st;
}

Eigen::MatrixXd site_kernel(const Site &site, const ModelSpec &spec,
                            const ParamState &state) {
  if (spec.kind == ModelKind::stationary) {
    if (site.s.size() != 2) {
      throw std::invalid_argument("stationary kernel requires d = 2");
    }
    return stationary_kernel_matrix(state.stationary);
  }
  return kernel_matrix(site.x_kern, state.kernel);
}

} // namespace covreg
