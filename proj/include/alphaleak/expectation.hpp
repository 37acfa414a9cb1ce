#pragma once

// Tail-to-expectation conversion and expected generalization error bounds.

#include <cstddef>

#include "alphaleak/learning.hpp"
#include "alphaleak/order.hpp"

namespace alphaleak {

/// Sub-Gaussian style tail P(|X - center| >= t) <= 2b exp(-t^2 / a^2).
struct TailBoundSpec {
  double a = 0.0;
  double b = 0.0;
  double center = 0.0;
  bool b_below_e = false;  // hypothesis b >= e not met (relaxed construction only)

  // Rejects a < 0 and b < e.
  static TailBoundSpec strict(double a, double b, double center = 0.0);
  // Rejects a < 0; b < e is recorded in b_below_e.
  static TailBoundSpec relaxed(double a, double b, double center = 0.0);
};

struct FlaggedValue {
  double value = 0.0;
  bool b_below_e = false;
};

/// a (sqrt(ln 2b) + 1 / (2 sqrt(ln 2b))). Throws std::domain_error when
/// ln 2b <= 0 (only reachable through relaxed specs with b <= 1/2).
FlaggedValue tail_to_expectation(const TailBoundSpec& spec);

struct Lemma9Check {
  double numeric_integral = 0.0;
  double bound = 0.0;
  bool b_below_e = false;
};

/// Integrates min(1, 2b exp(-t^2/a^2)) over [0, inf) by the midpoint rule,
/// starting from `resolution` panels and doubling until two successive
/// estimates differ by less than 1e-10. The range is cut where the integrand
/// drops below 1e-15. Requires a > 0 and resolution >= 100.
Lemma9Check lemma9_numeric_check(const TailBoundSpec& spec, std::size_t resolution);

/// The (a, b) substitution turning the high-probability bound into a tail:
/// a = sqrt(2 gamma sigma^2 / n), b = 2^(1/gamma - 1) exp(I / gamma).
TailBoundSpec expected_generr_tail_spec(std::size_t n, double sigma, Order alpha, double i_alpha);

/// sqrt(2 sigma^2 gamma / n) (sqrt(L) + 1 / (2 sqrt(L))), L = (ln 2 + I) / gamma.
/// Requires alpha > 1; the b >= e flag of the substitution is propagated.
FlaggedValue expected_generr_bound(std::size_t n, double sigma, Order alpha, double i_alpha);

/// 0-1 loss with maximal leakage: (1/sqrt(2n)) (sqrt(ln 2 + L) + 1 / (2 sqrt(ln 2 + L))).
double leakage_expected_bound(std::size_t n, double leakage);

/// sum_{s,h} P(s, h) |L_P(h) - L_S(h)| by enumeration.
double exact_expected_generr(const LearningProblem& problem, const Learner& learner,
                             Enumeration mode = Enumeration::kFull,
                             std::size_t cap = kDefaultDatasetCap);

}  // namespace alphaleak
