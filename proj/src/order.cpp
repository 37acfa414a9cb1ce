#include "alphaleak/order.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace alphaleak {

Order Order::of(double alpha) {
  if (std::isnan(alpha) || alpha <= 0.0) {
    throw std::invalid_argument("order must be a positive real, got " + std::to_string(alpha));
  }
  if (std::isinf(alpha)) return infinity();
  if (std::abs(alpha - 1.0) < kOneSnapTolerance) return one();
  return Order(Kind::kFinite, alpha);
}

double Order::inverse_conjugate() const {
  switch (kind_) {
    case Kind::kOne:
      return 0.0;
    case Kind::kInfinity:
      return 1.0;
    case Kind::kFinite:
      break;
  }
  return (value_ - 1.0) / value_;
}

Order parse_order(std::string_view text) {
  std::string lowered(text);
  lowered.erase(std::remove_if(lowered.begin(), lowered.end(),
                               [](unsigned char c) { return std::isspace(c) != 0; }),
                lowered.end());
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity") return Order::infinity();
  if (lowered.empty()) throw std::invalid_argument("empty order");

  // strtod rather than from_chars: libstdc++ 11 has no floating from_chars.
  char* end = nullptr;
  const double value = std::strtod(lowered.c_str(), &end);
  if (end != lowered.c_str() + lowered.size()) {
    throw std::invalid_argument("cannot parse order '" + std::string(text) + "'");
  }
  return Order::of(value);
}

std::string to_string(Order order) {
  if (order.is_infinite()) return "inf";
  if (order.is_one()) return "1";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", order.value());
  return buf;
}

double conjugate(Order alpha) {
  if (alpha.value() < 1.0) {
    throw std::invalid_argument("conjugate requires alpha >= 1, got " + to_string(alpha));
  }
  if (alpha.is_one()) return kInf;
  if (alpha.is_infinite()) return 1.0;
  return alpha.value() / (alpha.value() - 1.0);
}

HolderPair::HolderPair(Order alpha, Order alpha_prime)
    : alpha_(alpha),
      alpha_prime_(alpha_prime),
      gamma_(conjugate(alpha)),
      gamma_prime_(conjugate(alpha_prime)) {}

}  // namespace alphaleak
