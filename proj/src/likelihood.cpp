#include "covreg/likelihood.hpp"

#include "covreg/covariance.hpp"
#include "covreg/linalg.hpp"

#include <limits>
#include <stdexcept>

namespace covreg {

Eigen::MatrixXd marginal_covariance(const Design &design, const ModelSpec &spec,
                                    const ParamState &state) {
  Eigen::MatrixXd v = build_cov_matrix(design, spec, state);
  v.diagonal().array() += state.tau_sq;
  return v;
}

double marginal_loglik(const Eigen::VectorXd &z, const ModelSpec &spec,
                       const ParamState &state, const Design &design) {
  if (z.size() != design.size()) {
    throw std::invalid_argument("marginal_loglik: response length does not match design");
  }
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd v;
  try {
    v = marginal_covariance(design, spec, state);
  } catch (const NumericalError &) {
    return neg_inf;
  }
  const auto llt = try_cholesky(v);
  if (!llt) {
    return neg_inf;
  }
  return mvn_logpdf(z, design.mean_x * state.beta, *llt);
}

} // namespace covreg
