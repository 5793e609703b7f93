#include "covreg/convolution.hpp"

#include "covreg/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace covreg {

double gaussian_convolution_cov(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                                const Eigen::MatrixXd &sigma_i,
                                const Eigen::MatrixXd &sigma_j) {
  const double d = static_cast<double>(si.size());
  const Eigen::MatrixXd avg = 0.5 * (sigma_i + sigma_j);
  const double q = q_statistic(si, sj, sigma_i, sigma_j);
  return std::pow(2.0 * std::numbers::pi, -0.5 * d) / std::sqrt(avg.determinant()) *
         std::exp(-q);
}

namespace {

struct Density {
  Eigen::VectorXd mean;
  Eigen::MatrixXd precision;
  double log_norm = 0.0;

  Density(const Eigen::VectorXd &m, const Eigen::MatrixXd &cov)
      : mean(m), precision(cov.inverse()) {
    const double d = static_cast<double>(m.size());
    log_norm = -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(cov.determinant());
  }

  double log_at(double u0, double u1) const {
    const double a = u0 - mean(0);
    if (mean.size() == 1) {
      return log_norm - 0.5 * precision(0, 0) * a * a;
    }
    const double b = u1 - mean(1);
    return log_norm - 0.5 * (precision(0, 0) * a * a + 2.0 * precision(0, 1) * a * b +
                             precision(1, 1) * b * b);
  }
};

double trapezoid(const Density &di, const Density &dj, const Eigen::VectorXd &lo,
                 const Eigen::VectorXd &hi, int intervals) {
  const Eigen::Index d = lo.size();
  const double h0 = (hi(0) - lo(0)) / intervals;
  if (d == 1) {
    double sum = 0.0;
    for (int a = 0; a <= intervals; ++a) {
      const double u = lo(0) + a * h0;
      const double w = (a == 0 || a == intervals) ? 0.5 : 1.0;
      sum += w * std::exp(di.log_at(u, 0.0) + dj.log_at(u, 0.0));
    }
    return sum * h0;
  }
  const double h1 = (hi(1) - lo(1)) / intervals;
  double sum = 0.0;
  for (int a = 0; a <= intervals; ++a) {
    const double u0 = lo(0) + a * h0;
    const double wa = (a == 0 || a == intervals) ? 0.5 : 1.0;
    for (int b = 0; b <= intervals; ++b) {
      const double u1 = lo(1) + b * h1;
      const double wb = (b == 0 || b == intervals) ? 0.5 : 1.0;
      sum += wa * wb * std::exp(di.log_at(u0, u1) + dj.log_at(u0, u1));
    }
  }
  return sum * h0 * h1;
}

} // namespace

double gaussian_kernel_overlap(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                               const Eigen::MatrixXd &ki, const Eigen::MatrixXd &kj) {
  const Eigen::Index d = si.size();
  if (d != 1 && d != 2) {
    throw std::invalid_argument("gaussian_kernel_overlap: d must be 1 or 2");
  }
  const Density di(si, ki);
  const Density dj(sj, kj);
  Eigen::VectorXd lo(d);
  Eigen::VectorXd hi(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    const double sd_i = std::sqrt(ki(a, a));
    const double sd_j = std::sqrt(kj(a, a));
    lo(a) = std::min(si(a) - 8.0 * sd_i, sj(a) - 8.0 * sd_j);
    hi(a) = std::max(si(a) + 8.0 * sd_i, sj(a) + 8.0 * sd_j);
  }

  int intervals = 64;
  double previous = trapezoid(di, dj, lo, hi, intervals);
  for (int refinement = 0; refinement < 4; ++refinement) {
    intervals *= 2;
    const double current = trapezoid(di, dj, lo, hi, intervals);
    if (std::abs(current - previous) < 1e-6 * std::abs(current)) {
      return current;
    }
    previous = current;
  }
  throw QuadratureError("gaussian_kernel_overlap: no convergence after 4 refinements");
}

double convolution_oracle(const Eigen::VectorXd &si, const Eigen::VectorXd &sj,
                          const Eigen::MatrixXd &sigma_i, const Eigen::MatrixXd &sigma_j) {
  const double d = static_cast<double>(si.size());
  return std::pow(2.0, -0.5 * d) *
         gaussian_kernel_overlap(si, sj, 0.25 * sigma_i, 0.25 * sigma_j);
}

} // namespace covreg
