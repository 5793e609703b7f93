#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace covreg {

using Rng = std::mt19937_64;

/// Counter-based seed splitting: a SplitMix64 hash of (seed, stream), so every
/// consumer (fit, predict, replicate k, ...) gets an independent, reproducible
/// generator from one user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

Rng make_rng(std::uint64_t seed, std::uint64_t stream);

double standard_normal(Rng &rng);
Eigen::VectorXd standard_normal_vector(Rng &rng, Eigen::Index n);
double uniform01(Rng &rng);

/// Inverse-gamma draw with shape/rate parameterization (mean rate/(shape-1)).
double sample_inverse_gamma(Rng &rng, double shape, double rate);
double inverse_gamma_logpdf(double x, double shape, double rate);

/// Draw with density proportional to |W|^{-(df+d+1)/2} exp{-tr(scale W^{-1})/2}
/// (mean scale / (df - d - 1)). Throws std::invalid_argument for a non-SPD
/// scale or df <= d - 1.
Eigen::MatrixXd sample_inverse_wishart(Rng &rng, const Eigen::MatrixXd &scale, double df);
double inverse_wishart_logpdf(const Eigen::MatrixXd &w, const Eigen::MatrixXd &scale,
                              double df);

/// Draw from N(mean, cov) for a symmetric positive semi-definite cov, using a
/// pivoted LDL' factorization with negative rounding noise in D clamped to 0.
Eigen::VectorXd sample_mvn_psd(Rng &rng, const Eigen::VectorXd &mean,
                               const Eigen::MatrixXd &cov);

} // namespace covreg
