#pragma once

#include <compare>
#include <limits>
#include <string>
#include <string_view>

namespace alphaleak {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Orders closer than this to 1 are snapped to Order::one().
inline constexpr double kOneSnapTolerance = 1e-9;

/// Order of a Renyi divergence or Sibson information, alpha in (0, inf].
///
/// The two limit points are tagged explicitly so that callers never have to
/// evaluate 1/(alpha - 1) at alpha = 1 or carry inf through arithmetic.
class Order {
 public:
  enum class Kind { kFinite, kOne, kInfinity };

  // Throws std::invalid_argument for alpha <= 0 or NaN. +inf maps to
  // infinity(), |alpha - 1| < kOneSnapTolerance maps to one().
  static Order of(double alpha);
  static constexpr Order one() { return Order(Kind::kOne, 1.0); }
  static constexpr Order infinity() { return Order(Kind::kInfinity, kInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr double value() const { return value_; }
  constexpr bool is_one() const { return kind_ == Kind::kOne; }
  constexpr bool is_infinite() const { return kind_ == Kind::kInfinity; }
  constexpr bool is_finite_non_one() const { return kind_ == Kind::kFinite; }

  // (alpha - 1) / alpha, i.e. 1/gamma; 0 at one, 1 at infinity.
  double inverse_conjugate() const;

  friend constexpr bool operator==(Order a, Order b) { return a.value_ == b.value_; }
  friend constexpr std::partial_ordering operator<=>(Order a, Order b) {
    return a.value_ <=> b.value_;
  }

 private:
  constexpr Order(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

// Accepts "inf", "infinity", "+inf" (any case) and plain decimals.
Order parse_order(std::string_view text);
std::string to_string(Order order);

/// Hoelder conjugate gamma = alpha / (alpha - 1). +inf at alpha = 1, 1 at
/// alpha = inf. Throws std::invalid_argument for alpha < 1.
double conjugate(Order alpha);

/// The two conjugate pairs (alpha, gamma) and (alpha', gamma') used by the
/// general change-of-measure bound. Both orders must be >= 1.
class HolderPair {
 public:
  HolderPair(Order alpha, Order alpha_prime);

  Order alpha() const { return alpha_; }
  Order alpha_prime() const { return alpha_prime_; }
  double gamma() const { return gamma_; }
  double gamma_prime() const { return gamma_prime_; }

 private:
  Order alpha_;
  Order alpha_prime_;
  double gamma_;
  double gamma_prime_;
};

}  // namespace alphaleak
