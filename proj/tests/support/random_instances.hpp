#pragma once

// Seeded generators for property tests. Everything is derived from
// std::mt19937_64 raw output so instances are identical across platforms.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "alphaleak/bounds.hpp"
#include "alphaleak/distribution.hpp"

namespace alphaleak::testkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Inclusive range.
  std::size_t index(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  bool coin(double p_true) { return unit() < p_true; }

 private:
  std::mt19937_64 engine_;
};

// Each entry is zero with probability `zero_prob`; at least one entry is kept.
inline std::vector<double> random_weights(Rng& rng, std::size_t size, double zero_prob = 0.0) {
  std::vector<double> w(size);
  bool any = false;
  for (double& v : w) {
    v = rng.coin(zero_prob) ? 0.0 : 0.01 + rng.unit();
    any = any || v > 0.0;
  }
  if (!any) w[rng.index(0, size - 1)] = 1.0;
  return w;
}

inline FiniteDistribution random_distribution(Rng& rng, std::size_t size, double zero_prob = 0.0) {
  return FiniteDistribution::normalized(random_weights(rng, size, zero_prob));
}

inline std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

inline JointDistribution random_joint(Rng& rng, std::size_t nx, std::size_t ny, double zero_prob = 0.0) {
  return JointDistribution(nx, ny, to_vector(random_distribution(rng, nx * ny, zero_prob).mass()));
}

// Sizes drawn uniformly in [1, max]; about a third of the instances are sparse.
inline JointDistribution random_joint_upto(Rng& rng, std::size_t max_nx, std::size_t max_ny) {
  const std::size_t nx = rng.index(1, max_nx);
  const std::size_t ny = rng.index(1, max_ny);
  return random_joint(rng, nx, ny, rng.coin(1.0 / 3.0) ? 0.4 : 0.0);
}

inline Event random_event(Rng& rng, std::size_t nx, std::size_t ny) {
  Event e = Event::empty(nx, ny);
  const double density = rng.unit();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) e.set(x, y, rng.coin(density));
  return e;
}

// Row-stochastic ny x k matrix.
inline std::vector<FiniteDistribution> random_channel(Rng& rng, std::size_t ny, std::size_t k) {
  std::vector<FiniteDistribution> rows;
  for (std::size_t y = 0; y < ny; ++y) rows.push_back(random_distribution(rng, k, 0.3));
  return rows;
}

}  // namespace alphaleak::testkit
