#include "covreg/covariance.hpp"

#include "covreg/kernel.hpp"
#include "covreg/linalg.hpp"
#include "covreg/matern.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace covreg {

double process_variance(const Eigen::VectorXd &x, double sigma0_sq,
                        const Eigen::VectorXd &alpha_rest) {
  if (x.size() != alpha_rest.size() + 1) {
    throw std::invalid_argument("process_variance: covariate length " +
                                std::to_string(x.size()) + " does not match " +
                                std::to_string(alpha_rest.size()) + " coefficients");
  }
  return sigma0_sq * std::exp(alpha_rest.dot(x.tail(alpha_rest.size())));
}

double smoothness_value(const Eigen::VectorXd &x, const SmoothnessSpec &s) {
  if (s.mode == SmoothnessSpec::Mode::fixed) {
    return s.nu_fixed;
  }
  if (x.size() != s.delta.size()) {
    throw std::invalid_argument("smoothness_value: covariate length does not match delta");
  }
  return std::exp(0.5 * s.delta.dot(x));
}

namespace {

// Per-site quantities reused across every pair that touches the site.
struct SiteTerms {
  double s0 = 0.0;
  double s1 = 0.0;
  double k00 = 0.0;
  double k01 = 0.0;
  double k11 = 0.0;
  double det_quarter = 1.0; // |Sigma(s)|^{1/4}
  double half_log_var = 0.0; // alpha_{-0}' x_{-0} / 2
  double nu = 0.5;
};

std::vector<SiteTerms> site_terms(const Design &design, const ModelSpec &spec,
                                  const ParamState &state) {
  const Eigen::Index n = design.size();
  const Eigen::Index d = design.dim();
  if (d != 1 && d != 2) {
    throw std::invalid_argument("covariance: spatial dimension must be 1 or 2");
  }
  const bool stationary = spec.kind == ModelKind::stationary;
  Eigen::MatrixXd psi;
  Eigen::Matrix2d sigma0 = Eigen::Matrix2d::Zero();
  if (stationary) {
    if (d != 2) {
      throw std::invalid_argument("stationary kernel requires d = 2");
    }
    sigma0 = stationary_kernel_matrix(state.stationary);
  } else {
    psi = state.kernel.psi();
    if (state.kernel.gamma.rows() != d || state.kernel.gamma.cols() != design.kern_x.cols()) {
      throw std::invalid_argument("covariance: Gamma shape does not match design");
    }
  }
  if (state.alpha_rest.size() + 1 != design.var_x.cols()) {
    throw std::invalid_argument("covariance: alpha length does not match design");
  }

  std::vector<SiteTerms> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    SiteTerms &t = out[static_cast<std::size_t>(i)];
    t.s0 = design.coords(i, 0);
    t.s1 = d == 2 ? design.coords(i, 1) : 0.0;
    if (stationary) {
      t.k00 = sigma0(0, 0);
      t.k01 = sigma0(0, 1);
      t.k11 = sigma0(1, 1);
    } else {
      const Eigen::VectorXd g = state.kernel.gamma * design.kern_x.row(i).transpose();
      t.k00 = psi(0, 0) + g(0) * g(0);
      if (d == 2) {
        t.k01 = psi(0, 1) + g(0) * g(1);
        t.k11 = psi(1, 1) + g(1) * g(1);
      }
    }
    const double det = d == 2 ? t.k00 * t.k11 - t.k01 * t.k01 : t.k00;
    if (!(det > 0.0)) {
      throw NumericalError("covariance: kernel matrix is not positive definite");
    }
    t.det_quarter = std::sqrt(std::sqrt(det));
    if (state.alpha_rest.size() > 0) {
      t.half_log_var =
          0.5 * state.alpha_rest.dot(design.var_x.row(i).tail(state.alpha_rest.size()));
    }
    if (spec.smoothness.mode == SmoothnessSpec::Mode::regression) {
      t.nu = std::exp(0.5 * spec.smoothness.delta.dot(design.kern_x.row(i)));
    } else {
      t.nu = spec.smoothness.nu_fixed;
    }
  }
  return out;
}

// Determinant ratio times Matérn at sqrt(Q_ij); the variance factor is
// applied by the caller.
double pair_correlation(const SiteTerms &a, const SiteTerms &b, bool two_d) {
  const double m00 = 0.5 * (a.k00 + b.k00);
  const double dx = a.s0 - b.s0;
  double det = 0.0;
  double q = 0.0;
  if (two_d) {
    const double m01 = 0.5 * (a.k01 + b.k01);
    const double m11 = 0.5 * (a.k11 + b.k11);
    const double dy = a.s1 - b.s1;
    det = m00 * m11 - m01 * m01;
    if (!(det > 0.0)) {
      throw NumericalError("covariance: averaged kernel matrix is singular");
    }
    q = (m11 * dx * dx - 2.0 * m01 * dx * dy + m00 * dy * dy) / det;
  } else {
    det = m00;
    q = dx * dx / m00;
  }
  const double ratio = a.det_quarter * b.det_quarter / std::sqrt(det);
  return ratio * matern_corr(std::sqrt(std::max(q, 0.0)), 0.5 * (a.nu + b.nu));
}

} // namespace

double cov_value(const Site &si, const Site &sj, const ModelSpec &spec,
                 const ParamState &state) {
  const Eigen::MatrixXd ki = site_kernel(si, spec, state);
  const Eigen::MatrixXd kj = site_kernel(sj, spec, state);
  const Eigen::MatrixXd avg = 0.5 * (ki + kj);
  const double q = q_statistic(si.s, sj.s, ki, kj);
  const double ratio = std::sqrt(std::sqrt(ki.determinant())) *
                       std::sqrt(std::sqrt(kj.determinant())) /
                       std::sqrt(avg.determinant());
  const double nu =
      0.5 * (smoothness_value(si.x_kern, spec.smoothness) +
             smoothness_value(sj.x_kern, spec.smoothness));
  const Eigen::VectorXd xbar = 0.5 * (si.x_var + sj.x_var);
  const double variance = process_variance(xbar, state.sigma0_sq, state.alpha_rest);
  return variance * ratio * matern_corr(std::sqrt(q), nu);
}

Eigen::MatrixXd build_unscaled_cov_matrix(const Design &design, const ModelSpec &spec,
                                          const ParamState &state) {
  const auto terms = site_terms(design, spec, state);
  const Eigen::Index n = design.size();
  const bool two_d = design.dim() == 2;
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const SiteTerms &b = terms[static_cast<std::size_t>(j)];
    out(j, j) = std::exp(2.0 * b.half_log_var);
    for (Eigen::Index i = 0; i < j; ++i) {
      const SiteTerms &a = terms[static_cast<std::size_t>(i)];
      const double v = std::exp(a.half_log_var + b.half_log_var) *
                       pair_correlation(a, b, two_d);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Eigen::MatrixXd build_cov_matrix(const Design &design, const ModelSpec &spec,
                                 const ParamState &state) {
  return state.sigma0_sq * build_unscaled_cov_matrix(design, spec, state);
}

Eigen::MatrixXd build_cov_matrix(const Design &rows, const Design &cols,
                                 const ModelSpec &spec, const ParamState &state) {
  if (&rows == &cols) {
    return build_cov_matrix(rows, spec, state);
  }
  if (rows.dim() != cols.dim()) {
    throw std::invalid_argument("build_cov_matrix: spatial dimensions differ");
  }
  const auto ta = site_terms(rows, spec, state);
  const auto tb = site_terms(cols, spec, state);
  const bool two_d = rows.dim() == 2;
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (Eigen::Index j = 0; j < cols.size(); ++j) {
    const SiteTerms &b = tb[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < rows.size(); ++i) {
      const SiteTerms &a = ta[static_cast<std::size_t>(i)];
      out(i, j) = state.sigma0_sq * std::exp(a.half_log_var + b.half_log_var) *
                  pair_correlation(a, b, two_d);
    }
  }
  return out;
}

} // namespace covreg
