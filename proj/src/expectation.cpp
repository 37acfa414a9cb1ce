#include "alphaleak/expectation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace alphaleak {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kIntegrandFloor = 1e-15;
constexpr double kQuadratureTolerance = 1e-10;
constexpr std::size_t kMaxPanels = std::size_t{1} << 26;

double bracket(double log_2b) { return std::sqrt(log_2b) + 1.0 / (2.0 * std::sqrt(log_2b)); }

void check_scale(double a, double b) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("tail scale a must be >= 0");
  if (!(b > 0.0) || std::isnan(b)) throw std::invalid_argument("tail prefactor b must be positive");
}

}  // namespace

TailBoundSpec TailBoundSpec::strict(double a, double b, double center) {
  check_scale(a, b);
  if (b < std::numbers::e) throw std::invalid_argument("tail prefactor b must be >= e");
  return {a, b, center, false};
}

TailBoundSpec TailBoundSpec::relaxed(double a, double b, double center) {
  check_scale(a, b);
  return {a, b, center, b < std::numbers::e};
}

FlaggedValue tail_to_expectation(const TailBoundSpec& spec) {
  const double log_2b = std::log(2.0 * spec.b);
  if (!(log_2b > 0.0)) throw std::domain_error("ln 2b <= 0: tail bound carries no information");
  return {spec.a * bracket(log_2b), spec.b_below_e};
}

Lemma9Check lemma9_numeric_check(const TailBoundSpec& spec, std::size_t resolution) {
  if (resolution < 100) throw std::invalid_argument("quadrature resolution must be at least 100");
  if (!(spec.a > 0.0)) throw std::invalid_argument("quadrature needs a > 0");
  const double a = spec.a;
  const double two_b = 2.0 * spec.b;
  auto integrand = [&](double t) { return std::min(1.0, two_b * std::exp(-(t * t) / (a * a))); };

  // 2b exp(-T^2/a^2) = floor; kept at least as far as the kink at ln 2b.
  const double end = a * std::sqrt(std::max(std::log(two_b / kIntegrandFloor), 0.0));
  auto midpoint = [&](std::size_t panels) {
    const double h = end / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < panels; ++i) sum += integrand((static_cast<double>(i) + 0.5) * h);
    return sum * h;
  };

  std::size_t panels = resolution;
  double previous = midpoint(panels);
  double current = previous;
  while (panels < kMaxPanels) {
    panels *= 2;
    current = midpoint(panels);
    if (std::abs(current - previous) < kQuadratureTolerance) break;
    previous = current;
  }
  const FlaggedValue bound = tail_to_expectation(spec);
  return {current, bound.value, spec.b_below_e};
}

TailBoundSpec expected_generr_tail_spec(std::size_t n, double sigma, Order alpha, double i_alpha) {
  if (n == 0) throw std::invalid_argument("sample count n must be at least 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(alpha.value() > 1.0)) throw std::invalid_argument("expected-error bound needs alpha > 1");
  if (std::isnan(i_alpha) || i_alpha < 0.0) throw std::invalid_argument("information value must be >= 0");
  const double gamma = conjugate(alpha);
  const double a = std::sqrt(2.0 * gamma * sigma * sigma / static_cast<double>(n));
  const double b = std::exp2(1.0 / gamma - 1.0) * std::exp(i_alpha / gamma);
  return TailBoundSpec::relaxed(a, b);
}

FlaggedValue expected_generr_bound(std::size_t n, double sigma, Order alpha, double i_alpha) {
  const TailBoundSpec spec = expected_generr_tail_spec(n, sigma, alpha, i_alpha);
  const double gamma = conjugate(alpha);
  if (std::isinf(i_alpha)) return {kInf, spec.b_below_e};
  const double inner = (kLn2 + i_alpha) / gamma;
  const double scale = std::sqrt(2.0 * sigma * sigma * gamma / static_cast<double>(n));
  return {scale * bracket(inner), spec.b_below_e};
}

double leakage_expected_bound(std::size_t n, double leakage) {
  if (n == 0) throw std::invalid_argument("sample count n must be at least 1");
  if (std::isnan(leakage) || leakage < 0.0) throw std::invalid_argument("leakage must be >= 0");
  if (std::isinf(leakage)) return kInf;
  return bracket(kLn2 + leakage) / std::sqrt(2.0 * static_cast<double>(n));
}

double exact_expected_generr(const LearningProblem& problem, const Learner& learner,
                             Enumeration mode, std::size_t cap) {
  const DatasetSpace space = dataset_space(problem, mode, cap);
  const JointDistribution joint = build_joint(problem, learner, space);
  // Scaled by n: |n L_P(h) - sum_z c_z loss(h, z)|, divided by n once at the
  // end so integer-valued instances accumulate without rounding.
  const double n = static_cast<double>(problem.n());
  std::vector<double> scaled_risk(problem.h_size());
  for (std::size_t h = 0; h < scaled_risk.size(); ++h) scaled_risk[h] = n * true_risk(problem, h);
  double sum = 0.0;
  for (std::size_t s = 0; s < space.size(); ++s) {
    const auto counts = space.counts_of(s);
    for (std::size_t h = 0; h < problem.h_size(); ++h) {
      const double mass = joint(s, h);
      if (mass <= 0.0) continue;
      double scaled_empirical = 0.0;
      for (std::size_t z = 0; z < counts.size(); ++z) scaled_empirical += counts[z] * problem.loss(h, z);
      sum += mass * std::abs(scaled_risk[h] - scaled_empirical);
    }
  }
  sum /= n;
  return sum;
}

}  // namespace alphaleak
