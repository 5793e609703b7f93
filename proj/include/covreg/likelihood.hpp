#pragma once

#include "covreg/model.hpp"

#include <Eigen/Dense>

namespace covreg {

/// tau^2 I + Omega for the design's locations.
Eigen::MatrixXd marginal_covariance(const Design &design, const ModelSpec &spec,
                                    const ParamState &state);

/// log N(z; X beta, tau^2 I + Omega), by Cholesky. Returns -inf when the
/// factorization fails under the jitter policy or the covariance cannot be
/// assembled (degenerate kernel matrices).
double marginal_loglik(const Eigen::VectorXd &z, const ModelSpec &spec,
                       const ParamState &state, const Design &design);

} // namespace covreg
