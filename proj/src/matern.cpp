#include "covreg/matern.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace covreg {

namespace {

void check_args(double t, double nu) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("matern_corr: lag must be finite and >= 0");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("matern_corr: smoothness must be > 0");
  }
}

} // namespace

double matern_corr_bessel(double t, double nu) {
  check_args(t, nu);
  if (t == 0.0) {
    return 1.0;
  }
  const double u = std::sqrt(2.0 * nu) * t;
  double log_k = 0.0;
  try {
    log_k = std::log(boost::math::cyl_bessel_k(nu, u));
  } catch (const std::overflow_error &) {
    // u^nu K_nu(u) -> Gamma(nu) 2^{nu-1} as u -> 0; K_nu only overflows deep
    // inside that limit.
    return 1.0;
  }
  const double log_m = (1.0 - nu) * std::log(2.0) - std::lgamma(nu) +
                       nu * std::log(u) + log_k;
  return std::min(1.0, std::exp(log_m));
}

double matern_corr(double t, double nu) {
  check_args(t, nu);
  if (nu == 0.5) {
    return std::exp(-t);
  }
  if (nu == 1.5) {
    const double u = std::sqrt(3.0) * t;
    return (1.0 + u) * std::exp(-u);
  }
  if (nu == 2.5) {
    const double u = std::sqrt(5.0) * t;
    return (1.0 + u + u * u / 3.0) * std::exp(-u);
  }
  return matern_corr_bessel(t, nu);
}

} // namespace covreg
