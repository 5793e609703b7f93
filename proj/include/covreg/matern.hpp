#pragma once

namespace covreg {

/// Matérn correlation M_nu(t) = 2^{1-nu}/Gamma(nu) (sqrt(2 nu) t)^nu K_nu(sqrt(2 nu) t).
///
/// nu = 0.5, 1.5, 2.5 take closed-form paths (nu = 0.5 is the exponential
/// correlation exp(-t)); any other nu goes through the modified Bessel
/// function of the second kind. Throws std::invalid_argument for t < 0 or
/// nu <= 0.
double matern_corr(double t, double nu);

/// General-nu path only, never the closed forms. Exposed so the two paths can
/// be checked against each other.
double matern_corr_bessel(double t, double nu);

} // namespace covreg
