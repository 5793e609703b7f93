#pragma once

#include "covreg/model.hpp"

#include <Eigen/Dense>

namespace covreg {

/// sigma0^2 exp{alpha_{-0}' x_{-0}}: the process variance Var(Y(s)).
/// `x` carries the intercept in position 0.
double process_variance(const Eigen::VectorXd &x, double sigma0_sq,
                        const Eigen::VectorXd &alpha_rest);

/// nu(s): nu_fixed in fixed mode, exp{delta' x / 2} in regression mode.
double smoothness_value(const Eigen::VectorXd &x, const SmoothnessSpec &s);

/// Regression covariance C^R between two sites: variance term at the
/// averaged covariates, determinant ratio |S_i|^{1/4}|S_j|^{1/4}/|S_avg|^{1/2},
/// Matérn at sqrt(Q_ij) with the pairwise-averaged smoothness.
double cov_value(const Site &si, const Site &sj, const ModelSpec &spec,
                 const ParamState &state);

/// Omega with Omega_ij = C^R(row_i, col_j). When `rows` and `cols` are the
/// same object the result is the (exactly symmetric) training covariance.
Eigen::MatrixXd build_cov_matrix(const Design &rows, const Design &cols,
                                 const ModelSpec &spec, const ParamState &state);

/// Square covariance of one design (same as build_cov_matrix(d, d, ...)).
Eigen::MatrixXd build_cov_matrix(const Design &design, const ModelSpec &spec,
                                 const ParamState &state);

/// Omega / sigma0^2: the unscaled covariance used by the sigma0^2 update.
Eigen::MatrixXd build_unscaled_cov_matrix(const Design &design, const ModelSpec &spec,
                                          const ParamState &state);

} // namespace covreg
