#include "alphaleak/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphaleak/kernels.hpp"

namespace alphaleak {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("support size mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}

double kl_raw(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);
}

double max_ratio_raw(std::span<const double> p, std::span<const double> q) {
  double best = kNegInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInf;
    best = std::max(best, std::log(p[i]) - std::log(q[i]));
  }
  return std::max(best, 0.0);
}

// log sum_x P_X(x) P(y|x)^alpha for each y; -inf where column y is empty.
std::vector<double> log_column_moments(const JointDistribution& joint, double alpha) {
  const auto& px = joint.marginal_x();
  std::vector<double> out(joint.ny(), kNegInf);
  std::vector<double> terms;
  terms.reserve(joint.nx());
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    terms.clear();
    for (std::size_t x = 0; x < joint.nx(); ++x) {
      const double pxy = joint(x, y);
      if (pxy <= 0.0 || px[x] <= 0.0) continue;
      terms.push_back(std::log(px[x]) + alpha * (std::log(pxy) - std::log(px[x])));
    }
    out[y] = kernels::log_sum_exp(terms);
  }
  return out;
}

// max_{x : P_X(x) > 0} P(y|x) for each y.
std::vector<double> column_max_conditionals(const JointDistribution& joint) {
  std::vector<double> out(joint.ny(), 0.0);
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    if (joint.marginal_y()[y] <= 0.0) continue;
    for (std::size_t x = 0; x < joint.nx(); ++x) out[y] = std::max(out[y], joint.conditional(x, y));
  }
  return out;
}

}  // namespace

double log_power_sum(std::span<const double> p, std::span<const double> q, double alpha) {
  require_same_size(p.size(), q.size());
  std::vector<double> terms;
  terms.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  }
  return kernels::log_sum_exp(terms);
}

double renyi_divergence(std::span<const double> p, std::span<const double> q, Order alpha) {
  require_same_size(p.size(), q.size());
  if (alpha.is_one()) return kl_raw(p, q);
  if (alpha.is_infinite()) return max_ratio_raw(p, q);
  const double a = alpha.value();
  const double lps = log_power_sum(p, q, a);
  // lps = -inf with alpha < 1 means disjoint supports: +inf as well.
  const double d = lps / (a - 1.0);
  return std::isnan(d) ? kInf : std::max(d, 0.0);
}

double renyi_divergence(const FiniteDistribution& p, const FiniteDistribution& q, Order alpha) {
  return renyi_divergence(p.mass(), q.mass(), alpha);
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  return renyi_divergence(p, q, Order::one());
}

double divergence_from_product(const JointDistribution& joint, std::span<const double> q_y,
                               Order alpha) {
  require_same_size(joint.ny(), q_y.size());
  std::vector<double> reference(joint.nx() * joint.ny());
  for (std::size_t x = 0; x < joint.nx(); ++x)
    for (std::size_t y = 0; y < joint.ny(); ++y)
      reference[x * joint.ny() + y] = joint.marginal_x()[x] * q_y[y];
  return renyi_divergence(joint.mass(), reference, alpha);
}

double divergence_from_independence(const JointDistribution& joint, Order alpha) {
  return divergence_from_product(joint, joint.marginal_y().mass(), alpha);
}

double sibson_mi(const JointDistribution& joint, Order alpha) {
  if (alpha.is_one()) return mutual_information(joint);
  if (alpha.is_infinite()) return maximal_leakage(joint);
  const double a = alpha.value();
  std::vector<double> outer = log_column_moments(joint, a);
  for (double& v : outer) v /= a;
  const double value = a / (a - 1.0) * kernels::log_sum_exp(outer);
  return std::max(value, 0.0);
}

FiniteDistribution optimal_output_distribution(const JointDistribution& joint, Order alpha) {
  if (alpha.is_one()) return joint.marginal_y();
  if (alpha.is_infinite()) return FiniteDistribution::normalized(column_max_conditionals(joint));
  const double a = alpha.value();
  std::vector<double> logw = log_column_moments(joint, a);
  for (double& v : logw) v /= a;
  const double norm = kernels::log_sum_exp(logw);
  std::vector<double> w(logw.size());
  for (std::size_t y = 0; y < w.size(); ++y) w[y] = std::exp(logw[y] - norm);
  return FiniteDistribution::normalized(std::move(w));
}

double maximal_leakage(const JointDistribution& joint) {
  double sum = 0.0;
  for (double m : column_max_conditionals(joint)) sum += m;
  return std::max(std::log(sum), 0.0);
}

double mutual_information(const JointDistribution& joint) {
  const auto& px = joint.marginal_x();
  const auto& py = joint.marginal_y();
  double sum = 0.0;
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    for (std::size_t y = 0; y < joint.ny(); ++y) {
      const double p = joint(x, y);
      if (p <= 0.0) continue;
      sum += p * std::log(p / (px[x] * py[y]));
    }
  }
  return std::max(sum, 0.0);
}

OracleResult sibson_mi_oracle(const JointDistribution& joint, Order alpha, std::size_t resolution) {
  if (!alpha.is_finite_non_one()) {
    throw std::invalid_argument("minimization oracle needs a finite order other than 1");
  }
  if (joint.ny() > kOracleMaxOutputs) {
    throw std::invalid_argument("minimization oracle supports at most " +
                                std::to_string(kOracleMaxOutputs) + " output symbols");
  }
  if (resolution < kOracleMinResolution) {
    throw std::invalid_argument("minimization oracle resolution must be at least " +
                                std::to_string(kOracleMinResolution));
  }
  const double a = alpha.value();
  const std::size_t ny = joint.ny();
  const std::size_t cells = resolution + 1;

  // sum_{x,y} p_xy^a (p_x q_y)^(1-a) = sum_y q_y^(1-a) c_y, so on the grid
  // q_y = k_y / resolution the objective is a sum of per-column tables and
  // the grid minimum is a chain of min-plus convolutions. For a < 1 the sum
  // is maximized instead (the 1/(a-1) prefactor is negative).
  std::vector<double> log_c(ny, kNegInf);
  {
    const auto& px = joint.marginal_x();
    std::vector<double> terms;
    for (std::size_t y = 0; y < ny; ++y) {
      terms.clear();
      for (std::size_t x = 0; x < joint.nx(); ++x) {
        if (joint(x, y) <= 0.0) continue;
        terms.push_back(a * std::log(joint(x, y)) + (1.0 - a) * std::log(px[x]));
      }
      log_c[y] = kernels::log_sum_exp(terms);
    }
  }
  std::vector<double> log_grid(cells);
  const double log_res = std::log(static_cast<double>(resolution));
  log_grid[0] = kNegInf;
  for (std::size_t k = 1; k < cells; ++k) log_grid[k] = std::log(static_cast<double>(k)) - log_res;

  const double sign = a > 1.0 ? 1.0 : -1.0;
  std::vector<std::vector<double>> tables(ny, std::vector<double>(cells, 0.0));
  for (std::size_t y = 0; y < ny; ++y) {
    if (std::isinf(log_c[y])) continue;  // empty column: contributes nothing
    kernels::exp_affine(log_grid, 1.0 - a, log_c[y], tables[y]);
    if (sign < 0.0)
      for (double& v : tables[y]) v = -v;
  }

  std::vector<std::vector<std::int64_t>> split(ny, std::vector<std::int64_t>(cells, 0));
  std::vector<double> acc = tables[0];
  std::vector<double> next(cells);
  for (std::size_t y = 1; y < ny; ++y) {
    kernels::min_plus_convolve(acc, tables[y], next, split[y]);
    acc.swap(next);
  }
  std::vector<std::int64_t> units(ny, 0);
  {
    auto remaining = static_cast<std::int64_t>(resolution);
    for (std::size_t y = ny - 1; y >= 1; --y) {
      const std::int64_t before = split[y][static_cast<std::size_t>(remaining)];
      units[y] = remaining - before;
      remaining = before;
    }
    units[0] = remaining;
  }

  // Refinement on the fine lattice, measured in units of 1/resolution^2.
  const auto res = static_cast<std::int64_t>(resolution);
  const double lattice = static_cast<double>(res) * static_cast<double>(res);
  for (auto& u : units) u *= res;
  std::vector<double> q(ny);
  auto objective = [&](const std::vector<std::int64_t>& m) {
    for (std::size_t y = 0; y < ny; ++y) q[y] = static_cast<double>(m[y]) / lattice;
    return divergence_from_product(joint, q, alpha);
  };
  double best = objective(units);
  for (std::int64_t step = res;; step = (step + 1) / 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t to = 0; to < ny; ++to) {
        for (std::size_t from = 0; from < ny; ++from) {
          if (to == from || units[from] < step) continue;
          units[from] -= step;
          units[to] += step;
          const double v = objective(units);
          if (v < best) {
            best = v;
            improved = true;
          } else {
            units[from] += step;
            units[to] -= step;
          }
        }
      }
    }
    if (step == 1) break;
  }

  std::vector<double> minimizer(ny);
  for (std::size_t y = 0; y < ny; ++y) minimizer[y] = static_cast<double>(units[y]) / lattice;
  return OracleResult{best, FiniteDistribution::normalized(std::move(minimizer))};
}

}  // namespace alphaleak
