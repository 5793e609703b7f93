#pragma once

#include "covreg/model.hpp"
#include "covreg/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <functional>
#include <vector>

#include <unistd.h>

namespace covreg::testutil {

inline Eigen::MatrixXd random_spd(Rng &rng, Eigen::Index d, double scale = 1.0) {
  const Eigen::MatrixXd a = standard_normal_vector(rng, d * d).reshaped(d, d);
  Eigen::MatrixXd s = scale * (a * a.transpose() / static_cast<double>(d));
  s.diagonal().array() += 0.2 * scale;
  return s;
}

/// Random sites on [0, 10]^2 with intercept-led covariate blocks.
inline Design random_design(Rng &rng, Eigen::Index n, Eigen::Index q, Eigen::Index pv,
                            Eigen::Index pk) {
  Design d;
  d.coords.resize(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    d.coords(i, 0) = 10.0 * uniform01(rng);
    d.coords(i, 1) = 10.0 * uniform01(rng);
  }
  auto block = [&](Eigen::Index p) {
    Eigen::MatrixXd m(n, p);
    m.col(0).setOnes();
    for (Eigen::Index c = 1; c < p; ++c) {
      m.col(c) = standard_normal_vector(rng, n);
    }
    return m;
  };
  d.mean_x = block(q);
  d.var_x = block(pv);
  d.kern_x = block(pk);
  d.response = standard_normal_vector(rng, n);
  return d;
}

inline ModelSpec spec_for_design(const Design &d) {
  ModelSpec spec = full_nonstationary_model(static_cast<int>(d.mean_x.cols()),
                                            static_cast<int>(d.kern_x.cols()));
  spec.variance_covariates.clear();
  for (Eigen::Index c = 1; c < d.var_x.cols(); ++c) {
    spec.variance_covariates.push_back(static_cast<int>(c));
  }
  return spec;
}

inline ParamState random_state(Rng &rng, const ModelSpec &spec, const Design &d) {
  ParamState st = shaped_state(spec, d);
  st.beta = standard_normal_vector(rng, st.beta.size());
  st.tau_sq = 0.05 + 0.5 * uniform01(rng);
  st.sigma0_sq = 0.5 + 1.5 * uniform01(rng);
  st.alpha_rest = 0.3 * standard_normal_vector(rng, st.alpha_rest.size());
  st.kernel.gamma = 0.5 * standard_normal_vector(rng, st.kernel.gamma.size())
                              .reshaped(st.kernel.gamma.rows(), st.kernel.gamma.cols());
  st.kernel.set_psi(random_spd(rng, d.dim()));
  st.stationary = {0.2 + 2.0 * uniform01(rng), 0.2 + 2.0 * uniform01(rng),
                   1.5 * uniform01(rng)};
  st.y_latent = Eigen::VectorXd::Zero(d.size());
  return st;
}

/// Asymptotic Kolmogorov distribution tail with the small-sample correction
/// lambda = (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) D.
inline double ks_pvalue(double dstat, double ne) {
  const double rt = std::sqrt(ne);
  const double lambda = (rt + 0.12 + 0.11 / rt) * dstat;
  if (lambda < 1e-3) {
    return 1.0;
  }
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) {
      break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

inline double ks_one_sample_p(std::vector<double> x, const std::function<double(double)> &cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return ks_pvalue(d, n);
}

inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) {
      ++i;
    }
    while (j < b.size() && b[j] <= x) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return ks_pvalue(d, na * nb / (na + nb));
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("covreg_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::string file(const std::string &name) const { return (path_ / name).string(); }
  std::string write(const std::string &name, const std::string &content) const {
    std::ofstream(file(name)) << content;
    return file(name);
  }

private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string &path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace covreg::testutil
