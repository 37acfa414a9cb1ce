#pragma once

// Change-of-measure bounds P_XY(E) <= f(P_X P_Y(E)) * g(dependence) on
// finite product spaces, evaluated on explicit events.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "alphaleak/distribution.hpp"
#include "alphaleak/order.hpp"

namespace alphaleak {

/// Indicator grid over X x Y, row-major like JointDistribution.
class Event {
 public:
  Event(std::size_t nx, std::size_t ny, std::vector<bool> indicator);
  Event(const std::vector<std::vector<int>>& rows);

  static Event empty(std::size_t nx, std::size_t ny);
  static Event full(std::size_t nx, std::size_t ny);
  static Event diagonal(std::size_t n);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  bool contains(std::size_t x, std::size_t y) const { return cells_[x * ny_ + y]; }
  void set(std::size_t x, std::size_t y, bool value) { cells_[x * ny_ + y] = value; }

  // E_y = {x : (x, y) in E}.
  std::vector<std::size_t> fiber(std::size_t y) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::vector<bool> cells_;
};

enum class BoundKind { kTheorem1, kAlphaDivergence, kSibson, kLeakage };

const char* to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& text);

// holds = lhs <= rhs + kHoldsTolerance.
inline constexpr double kHoldsTolerance = 1e-9;

struct BoundReport {
  BoundKind kind = BoundKind::kTheorem1;
  Order alpha = Order::one();
  Order alpha_prime = Order::one();
  double gamma = kInf;
  double gamma_prime = kInf;
  double lhs = 0.0;
  double rhs = kInf;
  double slack = kInf;
  bool holds = true;
  // Log-scale pieces of the rhs for the single-order corollaries:
  // rhs = exp(info_term + fiber_term). Zero for theorem1 reports.
  double info_term = 0.0;
  double fiber_term = 0.0;
};

// P_XY(E).
double event_probability(const JointDistribution& joint, const Event& event);
// P_X P_Y(E).
double product_probability(const JointDistribution& joint, const Event& event);
// P_X(E_y); throws std::out_of_range for y >= ny.
double fiber_probability(const JointDistribution& joint, const Event& event, std::size_t y);
// max over {y : P_Y(y) > 0} of P_X(E_y).
double esssup_fiber(const JointDistribution& joint, const Event& event);

/// General two-exponent Hoelder bound:
///   (E_Y[P_X(E_Y)^(g'/g)])^(1/g') * (E_Y[E_X^(a'/a)[r^a]])^(1/a'),
/// r = dP_XY / d(P_X P_Y), evaluated in the log domain. Limits follow by
/// continuity (esssup for infinite exponents); at gamma = inf the fiber
/// power P_X(E_y)^0 is taken as 1.
BoundReport theorem1_bound(const JointDistribution& joint, const Event& event, const HolderPair& pair);

/// alpha' = alpha: (P_X P_Y(E))^(1/g) * exp(D_alpha(P_XY || P_X P_Y) / g).
BoundReport corollary_alpha_div_bound(const JointDistribution& joint, const Event& event, Order alpha);

/// alpha' -> 1: exp((1/g) (I_alpha(X;Y) + ln esssup_y P_X(E_y))).
/// alpha = 1 gives rhs = 1; alpha = inf delegates to the leakage bound.
BoundReport corollary_sibson_bound(const JointDistribution& joint, const Event& event, Order alpha);

/// esssup_y P_X(E_y) * exp(L(X -> Y)).
BoundReport corollary_leakage_bound(const JointDistribution& joint, const Event& event);

/// Picks the grid order with the smallest rhs; ties go to the smaller order.
/// kind must be kSibson or kAlphaDivergence. Throws on an empty grid.
std::pair<Order, BoundReport> best_order(const JointDistribution& joint, const Event& event,
                                         const std::vector<Order>& grid, BoundKind kind);

}  // namespace alphaleak
