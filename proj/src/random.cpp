#include "covreg/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace covreg {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

double standard_normal(Rng &rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

Eigen::VectorXd standard_normal_vector(Rng &rng, Eigen::Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = dist(rng);
  }
  return v;
}

double uniform01(Rng &rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double sample_inverse_gamma(Rng &rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("inverse gamma: shape and rate must be positive");
  }
  const double g = std::gamma_distribution<double>(shape, 1.0)(rng);
  return rate / g;
}

double inverse_gamma_logpdf(double x, double shape, double rate) {
  if (!(x > 0.0)) {
    return -std::numeric_limits<double>::infinity();
  }
  return shape * std::log(rate) - std::lgamma(shape) - (shape + 1.0) * std::log(x) -
         rate / x;
}

namespace {

double log_multivariate_gamma(double a, int d) {
  double out = 0.25 * d * (d - 1) * std::log(std::numbers::pi);
  for (int j = 0; j < d; ++j) {
    out += std::lgamma(a - 0.5 * j);
  }
  return out;
}

} // namespace

Eigen::MatrixXd sample_inverse_wishart(Rng &rng, const Eigen::MatrixXd &scale, double df) {
  const Eigen::Index d = scale.rows();
  if (scale.cols() != d || d == 0) {
    throw std::invalid_argument("inverse Wishart: scale must be square");
  }
  if (!(df > static_cast<double>(d) - 1.0)) {
    throw std::invalid_argument("inverse Wishart: df must exceed d - 1");
  }
  Eigen::LLT<Eigen::MatrixXd> scale_llt(scale);
  if (scale_llt.info() != Eigen::Success) {
    throw std::invalid_argument("inverse Wishart: scale is not positive definite");
  }
  // W^{-1} ~ Wishart(scale^{-1}, df). With scale^{-1} = M M', draw the
  // Bartlett factor A and set W^{-1} = M A A' M'.
  const Eigen::MatrixXd inv_scale = scale_llt.solve(Eigen::MatrixXd::Identity(d, d));
  const Eigen::MatrixXd m = Eigen::LLT<Eigen::MatrixXd>(inv_scale).matrixL();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double chi_df = df - static_cast<double>(i);
    a(i, i) = std::sqrt(2.0 * std::gamma_distribution<double>(0.5 * chi_df, 1.0)(rng));
    for (Eigen::Index j = 0; j < i; ++j) {
      a(i, j) = standard_normal(rng);
    }
  }
  const Eigen::MatrixXd ma = m * a;
  const Eigen::MatrixXd w_inv = ma * ma.transpose();
  Eigen::MatrixXd w = w_inv.inverse();
  return 0.5 * (w + w.transpose());
}

double inverse_wishart_logpdf(const Eigen::MatrixXd &w, const Eigen::MatrixXd &scale,
                              double df) {
  const auto d = static_cast<int>(w.rows());
  Eigen::LLT<Eigen::MatrixXd> w_llt(w);
  if (w_llt.info() != Eigen::Success) {
    return -std::numeric_limits<double>::infinity();
  }
  Eigen::LLT<Eigen::MatrixXd> s_llt(scale);
  if (s_llt.info() != Eigen::Success) {
    throw std::invalid_argument("inverse Wishart: scale is not positive definite");
  }
  const double log_det_w = 2.0 * w_llt.matrixLLT().diagonal().array().log().sum();
  const double log_det_s = 2.0 * s_llt.matrixLLT().diagonal().array().log().sum();
  const double trace = w_llt.solve(scale).trace();
  return 0.5 * df * log_det_s - 0.5 * df * d * std::log(2.0) -
         log_multivariate_gamma(0.5 * df, d) - 0.5 * (df + d + 1.0) * log_det_w -
         0.5 * trace;
}

Eigen::VectorXd sample_mvn_psd(Rng &rng, const Eigen::VectorXd &mean,
                               const Eigen::MatrixXd &cov) {
  const Eigen::Index n = mean.size();
  const Eigen::VectorXd xi = standard_normal_vector(rng, n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
  const Eigen::VectorXd sqrt_d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
  Eigen::VectorXd v = ldlt.matrixL() * sqrt_d.cwiseProduct(xi);
  v = ldlt.transpositionsP().transpose() * v;
  return mean + v;
}

} // namespace covreg
