#pragma once

// Information measures over finite alphabets. Every value is in nats; +inf
// is a legitimate result (e.g. alpha > 1 without absolute continuity) and is
// returned, never thrown.

#include <cstddef>
#include <span>

#include "alphaleak/distribution.hpp"
#include "alphaleak/order.hpp"

namespace alphaleak {

/// log sum_i p_i^alpha q_i^(1-alpha) for finite alpha != 1.
///
/// Zero-mass conventions used by every divergence in this library:
///   p_i = 0             -> term contributes 0
///   p_i > 0, q_i = 0    -> contributes 0 when alpha < 1, +inf when alpha > 1
/// Returns -inf when no term contributes. p and q must have equal length.
double log_power_sum(std::span<const double> p, std::span<const double> q, double alpha);

/// Renyi divergence D_alpha(P || Q) on raw mass vectors of equal length.
double renyi_divergence(std::span<const double> p, std::span<const double> q, Order alpha);
double renyi_divergence(const FiniteDistribution& p, const FiniteDistribution& q, Order alpha);

/// D_1 = sum p ln(p / q), 0 ln 0 := 0.
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

/// D_alpha(P_XY || P_X Q_Y) for an arbitrary output distribution Q_Y.
double divergence_from_product(const JointDistribution& joint, std::span<const double> q_y,
                               Order alpha);

/// D_alpha(P_XY || P_X P_Y).
double divergence_from_independence(const JointDistribution& joint, Order alpha);

/// Sibson's alpha-mutual information, closed form of min_Q D(P_XY || P_X Q).
/// alpha = 1 gives Shannon mutual information, alpha = inf maximal leakage.
double sibson_mi(const JointDistribution& joint, Order alpha);

/// Minimizer Q* of D_alpha(P_XY || P_X Q_Y):
/// Q*(y) proportional to (sum_x P_X(x) P(y|x)^alpha)^(1/alpha).
FiniteDistribution optimal_output_distribution(const JointDistribution& joint, Order alpha);

/// ln sum_{y : P_Y(y) > 0} max_{x : P_X(x) > 0} P(y|x).
double maximal_leakage(const JointDistribution& joint);

double mutual_information(const JointDistribution& joint);

struct OracleResult {
  double value = 0.0;         // nats
  FiniteDistribution minimizer = FiniteDistribution::uniform(1);
};

inline constexpr std::size_t kOracleMaxOutputs = 5;
inline constexpr std::size_t kOracleMinResolution = 50;

/// Definitional Sibson information: minimizes D_alpha(P_XY || P_X Q_Y)
/// directly over Q_Y, with no use of the analytic minimizer.
///
/// Exhausts the simplex grid of step 1/resolution (dynamic programming over
/// the y-separable sum), then refines by pairwise mass transfers on the
/// 1/resolution^2 lattice with halving step sizes down to one lattice unit.
/// The divergence is separable-convex in Q_Y along the lattice, so the final
/// point is the lattice optimum; results are nonincreasing over nested
/// resolutions. Deterministic.
///
/// Requires finite alpha != 1, ny <= kOracleMaxOutputs and
/// resolution >= kOracleMinResolution (std::invalid_argument otherwise).
OracleResult sibson_mi_oracle(const JointDistribution& joint, Order alpha, std::size_t resolution);

inline double sibson_mi_minimization_oracle(const JointDistribution& joint, Order alpha,
                                            std::size_t resolution) {
  return sibson_mi_oracle(joint, alpha, resolution).value;
}

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace alphaleak
