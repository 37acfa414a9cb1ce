#include "alphaleak/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "alphaleak/kernels.hpp"
#include "alphaleak/measures.hpp"

namespace alphaleak {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_match(const JointDistribution& joint, const Event& event) {
  if (joint.nx() != event.nx() || joint.ny() != event.ny()) {
    throw std::invalid_argument("event is " + std::to_string(event.nx()) + "x" +
                                std::to_string(event.ny()) + " but joint is " +
                                std::to_string(joint.nx()) + "x" + std::to_string(joint.ny()));
  }
}

void finish(BoundReport& report) {
  report.slack = report.rhs - report.lhs;
  report.holds = report.lhs <= report.rhs + kHoldsTolerance;
}

// exp(info + fiber) where a -inf fiber term wins over any info term.
double exp_terms(double info, double fiber) {
  if (fiber == kNegInf) return 0.0;
  return std::exp(info + fiber);
}

// Lp(P_Y) norm in the log domain: (1/p) log sum_y P_Y(y) exp(p * log_v[y]),
// or max over the support when p is infinite.
double log_norm_over_y(const FiniteDistribution& py, const std::vector<double>& log_v, double p) {
  if (std::isinf(p)) {
    double best = kNegInf;
    for (std::size_t y = 0; y < py.size(); ++y)
      if (py[y] > 0.0) best = std::max(best, log_v[y]);
    return best;
  }
  std::vector<double> terms;
  terms.reserve(py.size());
  for (std::size_t y = 0; y < py.size(); ++y) {
    if (py[y] <= 0.0 || log_v[y] == kNegInf) continue;
    terms.push_back(std::log(py[y]) + p * log_v[y]);
  }
  return kernels::log_sum_exp(terms) / p;
}

}  // namespace

Event::Event(std::size_t nx, std::size_t ny, std::vector<bool> indicator)
    : nx_(nx), ny_(ny), cells_(std::move(indicator)) {
  if (nx_ == 0 || ny_ == 0) throw std::invalid_argument("event: zero dimension");
  if (cells_.size() != nx_ * ny_) throw std::invalid_argument("event: cell count mismatch");
}

Event::Event(const std::vector<std::vector<int>>& rows)
    : nx_(rows.size()), ny_(rows.empty() ? 0 : rows.front().size()) {
  if (nx_ == 0 || ny_ == 0) throw std::invalid_argument("event: zero dimension");
  cells_.reserve(nx_ * ny_);
  for (const auto& r : rows) {
    if (r.size() != ny_) throw std::invalid_argument("event: ragged rows");
    for (int v : r) {
      if (v != 0 && v != 1) throw std::invalid_argument("event: entries must be 0 or 1");
      cells_.push_back(v == 1);
    }
  }
}

Event Event::empty(std::size_t nx, std::size_t ny) { return Event(nx, ny, std::vector<bool>(nx * ny, false)); }

Event Event::full(std::size_t nx, std::size_t ny) { return Event(nx, ny, std::vector<bool>(nx * ny, true)); }

Event Event::diagonal(std::size_t n) {
  Event e = empty(n, n);
  for (std::size_t i = 0; i < n; ++i) e.set(i, i, true);
  return e;
}

std::vector<std::size_t> Event::fiber(std::size_t y) const {
  if (y >= ny_) throw std::out_of_range("fiber index out of range");
  std::vector<std::size_t> xs;
  for (std::size_t x = 0; x < nx_; ++x)
    if (contains(x, y)) xs.push_back(x);
  return xs;
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kTheorem1:
      return "theorem1";
    case BoundKind::kAlphaDivergence:
      return "alpha_div";
    case BoundKind::kSibson:
      return "sibson";
    case BoundKind::kLeakage:
      return "leakage";
  }
  return "unknown";
}

BoundKind parse_bound_kind(const std::string& text) {
  if (text == "theorem1") return BoundKind::kTheorem1;
  if (text == "alpha_div") return BoundKind::kAlphaDivergence;
  if (text == "sibson") return BoundKind::kSibson;
  if (text == "leakage") return BoundKind::kLeakage;
  throw std::invalid_argument("unknown bound kind '" + text +
                              "' (expected theorem1, alpha_div, sibson or leakage)");
}

double event_probability(const JointDistribution& joint, const Event& event) {
  require_match(joint, event);
  double p = 0.0;
  for (std::size_t x = 0; x < joint.nx(); ++x)
    for (std::size_t y = 0; y < joint.ny(); ++y)
      if (event.contains(x, y)) p += joint(x, y);
  return std::min(p, 1.0);
}

double product_probability(const JointDistribution& joint, const Event& event) {
  require_match(joint, event);
  double p = 0.0;
  for (std::size_t y = 0; y < joint.ny(); ++y) p += joint.marginal_y()[y] * fiber_probability(joint, event, y);
  return std::min(p, 1.0);
}

double fiber_probability(const JointDistribution& joint, const Event& event, std::size_t y) {
  require_match(joint, event);
  if (y >= joint.ny()) throw std::out_of_range("fiber index out of range");
  double p = 0.0;
  for (std::size_t x = 0; x < joint.nx(); ++x)
    if (event.contains(x, y)) p += joint.marginal_x()[x];
  return std::min(p, 1.0);
}

double esssup_fiber(const JointDistribution& joint, const Event& event) {
  require_match(joint, event);
  double best = 0.0;
  for (std::size_t y = 0; y < joint.ny(); ++y)
    if (joint.marginal_y()[y] > 0.0) best = std::max(best, fiber_probability(joint, event, y));
  return best;
}

BoundReport theorem1_bound(const JointDistribution& joint, const Event& event, const HolderPair& pair) {
  require_match(joint, event);
  const auto& px = joint.marginal_x();
  const auto& py = joint.marginal_y();
  const std::size_t ny = joint.ny();

  BoundReport report;
  report.kind = BoundKind::kTheorem1;
  report.alpha = pair.alpha();
  report.alpha_prime = pair.alpha_prime();
  report.gamma = pair.gamma();
  report.gamma_prime = pair.gamma_prime();
  report.lhs = event_probability(joint, event);

  // Fiber factor: log of P_X(E_y)^(1/gamma).
  std::vector<double> log_fiber(ny, 0.0);
  if (!std::isinf(pair.gamma())) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double f = fiber_probability(joint, event, y);
      log_fiber[y] = f > 0.0 ? std::log(f) / pair.gamma() : kNegInf;
    }
  }

  // Density factor: log of E_X[r(X, y)^alpha]^(1/alpha).
  std::vector<double> log_density(ny, 0.0);
  const Order alpha = pair.alpha();
  if (!alpha.is_one()) {
    std::vector<double> terms;
    for (std::size_t y = 0; y < ny; ++y) {
      if (py[y] <= 0.0) continue;
      terms.clear();
      double best = kNegInf;
      for (std::size_t x = 0; x < joint.nx(); ++x) {
        const double pxy = joint(x, y);
        if (pxy <= 0.0) continue;
        const double log_r = std::log(pxy) - std::log(px[x]) - std::log(py[y]);
        best = std::max(best, log_r);
        if (!alpha.is_infinite()) terms.push_back(std::log(px[x]) + alpha.value() * log_r);
      }
      log_density[y] = alpha.is_infinite() ? best : kernels::log_sum_exp(terms) / alpha.value();
    }
  }

  const double log_first = log_norm_over_y(py, log_fiber, pair.gamma_prime());
  const double log_second = log_norm_over_y(py, log_density, pair.alpha_prime().value());
  report.rhs = exp_terms(log_second, log_first);
  finish(report);
  return report;
}

BoundReport corollary_alpha_div_bound(const JointDistribution& joint, const Event& event, Order alpha) {
  require_match(joint, event);
  BoundReport report;
  report.kind = BoundKind::kAlphaDivergence;
  report.alpha = alpha;
  report.alpha_prime = alpha;
  report.gamma = conjugate(alpha);
  report.gamma_prime = report.gamma;
  report.lhs = event_probability(joint, event);
  if (alpha.is_one()) {
    report.rhs = 1.0;
  } else {
    const double inv_gamma = alpha.inverse_conjugate();
    const double q = product_probability(joint, event);
    const double d = divergence_from_independence(joint, alpha);
    report.info_term = inv_gamma * d;
    report.fiber_term = q > 0.0 ? inv_gamma * std::log(q) : kNegInf;
    report.rhs = exp_terms(report.info_term, report.fiber_term);
  }
  finish(report);
  return report;
}

BoundReport corollary_leakage_bound(const JointDistribution& joint, const Event& event) {
  require_match(joint, event);
  BoundReport report;
  report.kind = BoundKind::kLeakage;
  report.alpha = Order::infinity();
  report.alpha_prime = Order::one();
  report.gamma = 1.0;
  report.gamma_prime = kInf;
  report.lhs = event_probability(joint, event);
  const double s = esssup_fiber(joint, event);
  report.info_term = maximal_leakage(joint);
  report.fiber_term = s > 0.0 ? std::log(s) : kNegInf;
  report.rhs = exp_terms(report.info_term, report.fiber_term);
  finish(report);
  return report;
}

BoundReport corollary_sibson_bound(const JointDistribution& joint, const Event& event, Order alpha) {
  require_match(joint, event);
  if (alpha.is_infinite()) {
    BoundReport report = corollary_leakage_bound(joint, event);
    report.kind = BoundKind::kSibson;
    return report;
  }
  BoundReport report;
  report.kind = BoundKind::kSibson;
  report.alpha = alpha;
  report.alpha_prime = Order::one();
  report.gamma = conjugate(alpha);
  report.gamma_prime = kInf;
  report.lhs = event_probability(joint, event);
  if (alpha.is_one()) {
    report.rhs = 1.0;
  } else {
    const double inv_gamma = alpha.inverse_conjugate();
    const double s = esssup_fiber(joint, event);
    report.info_term = inv_gamma * sibson_mi(joint, alpha);
    report.fiber_term = s > 0.0 ? inv_gamma * std::log(s) : kNegInf;
    report.rhs = exp_terms(report.info_term, report.fiber_term);
  }
  finish(report);
  return report;
}

std::pair<Order, BoundReport> best_order(const JointDistribution& joint, const Event& event,
                                         const std::vector<Order>& grid, BoundKind kind) {
  if (grid.empty()) throw std::invalid_argument("best_order: empty grid");
  if (kind != BoundKind::kSibson && kind != BoundKind::kAlphaDivergence) {
    throw std::invalid_argument("best_order: kind must be sibson or alpha_div");
  }
  std::optional<std::pair<Order, BoundReport>> best;
  for (Order a : grid) {
    BoundReport r = kind == BoundKind::kSibson ? corollary_sibson_bound(joint, event, a)
                                               : corollary_alpha_div_bound(joint, event, a);
    if (!best || r.rhs < best->second.rhs || (r.rhs == best->second.rhs && a < best->first)) {
      best.emplace(a, r);
    }
  }
  return *best;
}

}  // namespace alphaleak
