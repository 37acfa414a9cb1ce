#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace alphaleak {

// Sum-to-one tolerance enforced at construction.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Probability mass on {0, ..., size-1}. Immutable once built.
class FiniteDistribution {
 public:
  // Throws std::invalid_argument on empty input, negative or non-finite
  // entries, or |sum - 1| > tolerance.
  explicit FiniteDistribution(std::vector<double> mass,
                              double tolerance = kNormalizationTolerance);

  static FiniteDistribution uniform(std::size_t size);
  static FiniteDistribution point_mass(std::size_t size, std::size_t at);
  static FiniteDistribution bernoulli(double p_one);
  // Rescales nonnegative weights to sum 1; throws when all weights are zero.
  static FiniteDistribution normalized(std::vector<double> weights);

  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  double at(std::size_t i) const;
  std::span<const double> mass() const { return mass_; }

 private:
  std::vector<double> mass_;
};

/// Mass grid over X x Y, stored row-major (x rows, y columns).
class JointDistribution {
 public:
  JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> mass,
                    double tolerance = kNormalizationTolerance);
  JointDistribution(const std::vector<std::vector<double>>& rows,
                    double tolerance = kNormalizationTolerance);

  static JointDistribution product(const FiniteDistribution& px, const FiniteDistribution& py);
  // P_XY(x, y) = P_X(x) * channel[x][y]; each channel row must be a distribution.
  static JointDistribution from_channel(const FiniteDistribution& px,
                                        const std::vector<FiniteDistribution>& channel);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double operator()(std::size_t x, std::size_t y) const { return mass_[x * ny_ + y]; }
  std::span<const double> mass() const { return mass_; }
  std::span<const double> row(std::size_t x) const { return {mass_.data() + x * ny_, ny_}; }

  const FiniteDistribution& marginal_x() const { return marginal_x_; }
  const FiniteDistribution& marginal_y() const { return marginal_y_; }

  // P_{Y|X=x}; throws std::domain_error when P_X(x) = 0.
  FiniteDistribution conditional_y(std::size_t x) const;
  // P(y|x) without constructing a distribution; 0 when P_X(x) = 0.
  double conditional(std::size_t x, std::size_t y) const;

  // Cell-wise P_X(x) * P_Y(y) as a flat row-major grid.
  std::vector<double> product_of_marginals() const;

  // J * K for a row-stochastic ny x k matrix K (post-processing of Y).
  JointDistribution garble(const std::vector<FiniteDistribution>& channel) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> mass_;
  FiniteDistribution marginal_x_;
  FiniteDistribution marginal_y_;
};

}  // namespace alphaleak
