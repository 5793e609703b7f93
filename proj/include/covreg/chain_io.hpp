#pragma once

#include "covreg/model.hpp"
#include "covreg/sampler.hpp"

#include <string>
#include <vector>

namespace covreg {

/// Column names in output order: beta_0.., tau2, sigma0_2, alpha_1..,
/// gamma_<row><col>.., psi_11, psi_22, rho (or lambda1, lambda2, eta). The
/// chain file appends a log_post column.
std::vector<std::string> chain_columns(const ModelSpec &spec, const ParamState &shape);

/// One row per retained draw.
std::string chain_to_csv(const PosteriorChain &chain, const ModelSpec &spec);

/// Reads a chain written by chain_to_csv. `shape` supplies the block sizes
/// (e.g. shaped_state for the design the chain was fitted on); the header
/// must match chain_columns exactly.
std::vector<ParamState> read_chain(const std::string &path, const ModelSpec &spec,
                                   const ParamState &shape);

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double lower = 0.0; // 2.5% quantile
  double upper = 0.0; // 97.5% quantile
  bool excludes_zero = false;
};

/// Posterior mean and equal-tailed 95% interval per parameter, plus psi_12
/// for nonstationary models.
std::vector<ParamSummary> summarize_chain(const std::vector<ParamState> &draws,
                                          const ModelSpec &spec);
std::string summary_to_csv(const std::vector<ParamSummary> &rows);

} // namespace covreg
