#include "alphaleak/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace alphaleak {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base) {
      throw std::length_error("dataset space " + std::to_string(base) + "^" + std::to_string(exp) +
                              " exceeds the cap of " + std::to_string(cap));
    }
    out *= base;
  }
  if (out > cap) throw std::length_error("dataset space exceeds the cap of " + std::to_string(cap));
  return out;
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
}

void require_n(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count n must be at least 1");
}

void require_info(double i_alpha) {
  if (std::isnan(i_alpha) || i_alpha < 0.0) throw std::invalid_argument("information value must be >= 0");
}

// All count vectors of length z summing to n.
void compositions(std::size_t z, std::size_t n, std::vector<std::uint32_t>& current,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (current.size() + 1 == z) {
    current.push_back(static_cast<std::uint32_t>(n));
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t c = 0; c <= n; ++c) {
    current.push_back(static_cast<std::uint32_t>(c));
    compositions(z, n - c, current, out);
    current.pop_back();
  }
}

std::vector<std::size_t> sorted_dataset(std::span<const std::uint32_t> counts, bool ascending) {
  std::vector<std::size_t> d;
  for (std::size_t z = 0; z < counts.size(); ++z) d.insert(d.end(), counts[z], z);
  if (!ascending) std::reverse(d.begin(), d.end());
  return d;
}

// sum_z counts[z] * loss(h, z) for every row and hypothesis, row-major.
std::vector<double> risk_sums(const LearningProblem& problem, const DatasetSpace& space) {
  std::vector<double> out(space.size() * problem.h_size(), 0.0);
  for (std::size_t s = 0; s < space.size(); ++s) {
    const auto counts = space.counts_of(s);
    for (std::size_t h = 0; h < problem.h_size(); ++h) {
      double sum = 0.0;
      for (std::size_t z = 0; z < counts.size(); ++z) sum += counts[z] * problem.loss(h, z);
      out[s * problem.h_size() + h] = sum;
    }
  }
  return out;
}

}  // namespace

LearningProblem::LearningProblem(FiniteDistribution data, std::size_t n,
                                 std::vector<std::vector<double>> loss, std::optional<double> sigma)
    : data_(std::move(data)),
      n_(n),
      h_size_(loss.size()),
      sigma_(sigma.value_or(kBoundedLossSigma)),
      sigma_user_asserted_(sigma.has_value()) {
  require_n(n_);
  if (h_size_ == 0) throw std::invalid_argument("loss table needs at least one hypothesis");
  loss_.reserve(h_size_ * data_.size());
  for (std::size_t h = 0; h < h_size_; ++h) {
    if (loss[h].size() != data_.size()) {
      throw std::invalid_argument("loss row " + std::to_string(h) + " has " +
                                  std::to_string(loss[h].size()) + " entries, expected " +
                                  std::to_string(data_.size()));
    }
    for (double v : loss[h]) {
      if (!std::isfinite(v)) throw std::invalid_argument("loss entries must be finite");
      loss_.push_back(v);
    }
  }
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) throw std::invalid_argument("sigma must be positive");
  if (!sigma_user_asserted_ && !loss_in_unit_interval()) {
    throw std::invalid_argument("losses outside [0, 1] need an explicit sigma");
  }
}

bool LearningProblem::loss_in_unit_interval() const {
  return std::all_of(loss_.begin(), loss_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

bool LearningProblem::zero_one_loss() const {
  return std::all_of(loss_.begin(), loss_.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

std::vector<std::size_t> decode_dataset(std::size_t index, std::size_t z_size, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t i = n; i-- > 0;) {
    d[i] = index % z_size;
    index /= z_size;
  }
  return d;
}

std::size_t encode_dataset(std::span<const std::size_t> dataset, std::size_t z_size) {
  std::size_t index = 0;
  for (std::size_t z : dataset) index = index * z_size + z;
  return index;
}

DatasetSpace dataset_space(const LearningProblem& problem, Enumeration mode, std::size_t cap) {
  DatasetSpace space;
  space.mode = mode;
  space.z_size = problem.z_size();
  space.n = problem.n();
  space.full_size = checked_power(space.z_size, space.n, cap);
  const auto& p = problem.data();

  if (mode == Enumeration::kFull) {
    space.probability.resize(space.full_size);
    space.counts.assign(space.full_size * space.z_size, 0);
    space.representative.resize(space.full_size);
    std::vector<std::size_t> digits(space.n, 0);
    for (std::size_t s = 0; s < space.full_size; ++s) {
      double prob = 1.0;
      for (std::size_t z : digits) {
        prob *= p[z];
        ++space.counts[s * space.z_size + z];
      }
      space.probability[s] = prob;
      space.representative[s] = s;
      // odometer increment, last position fastest
      for (std::size_t i = space.n; i-- > 0;) {
        if (++digits[i] < space.z_size) break;
        digits[i] = 0;
      }
    }
    return space;
  }

  std::vector<std::vector<std::uint32_t>> types;
  std::vector<std::uint32_t> scratch;
  compositions(space.z_size, space.n, scratch, types);
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (representative, type)
  for (std::size_t t = 0; t < types.size(); ++t) {
    order.emplace_back(encode_dataset(sorted_dataset(types[t], true), space.z_size), t);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [rep, t] : order) {
    // Multinomial coefficient as a product of binomials; it never exceeds
    // full_size, so it is an exact integer. The mass product mirrors the
    // full enumeration term by term.
    std::uint64_t coefficient = 1;
    std::uint64_t placed = 0;
    double mass = 1.0;
    for (std::size_t z = 0; z < space.z_size; ++z) {
      const std::uint32_t c = types[t][z];
      std::uint64_t binom = 1;
      for (std::uint32_t j = 1; j <= c; ++j) {
        // binom * (placed + j) / j is an integer; dividing out the gcd first keeps it in range.
        const std::uint64_t g = std::gcd(binom, static_cast<std::uint64_t>(j));
        binom = (binom / g) * ((placed + j) / (j / g));
        mass *= p[z];
      }
      placed += c;
      coefficient *= binom;
    }
    space.probability.push_back(static_cast<double>(coefficient) * mass);
    space.counts.insert(space.counts.end(), types[t].begin(), types[t].end());
    space.representative.push_back(rep);
  }
  return space;
}

double empirical_risk(const LearningProblem& problem, std::size_t h, std::span<const std::size_t> dataset) {
  if (h >= problem.h_size()) throw std::out_of_range("hypothesis index out of range");
  if (dataset.size() != problem.n()) throw std::invalid_argument("dataset length differs from n");
  double sum = 0.0;
  for (std::size_t z : dataset) {
    if (z >= problem.z_size()) throw std::out_of_range("sample value out of range");
    sum += problem.loss(h, z);
  }
  return sum / static_cast<double>(problem.n());
}

double empirical_risk_from_counts(const LearningProblem& problem, std::size_t h,
                                  std::span<const std::uint32_t> counts) {
  if (h >= problem.h_size()) throw std::out_of_range("hypothesis index out of range");
  double sum = 0.0;
  for (std::size_t z = 0; z < counts.size(); ++z) sum += counts[z] * problem.loss(h, z);
  return sum / static_cast<double>(problem.n());
}

double true_risk(const LearningProblem& problem, std::size_t h) {
  if (h >= problem.h_size()) throw std::out_of_range("hypothesis index out of range");
  double sum = 0.0;
  for (std::size_t z = 0; z < problem.z_size(); ++z) sum += problem.data()[z] * problem.loss(h, z);
  return sum;
}

Learner Learner::deterministic(std::size_t h_size, std::vector<std::size_t> map) {
  if (h_size == 0) throw std::invalid_argument("learner needs at least one hypothesis");
  Learner l;
  l.deterministic_ = true;
  l.num_datasets_ = map.size();
  l.h_size_ = h_size;
  l.rows_.assign(map.size() * h_size, 0.0);
  for (std::size_t s = 0; s < map.size(); ++s) {
    if (map[s] >= h_size) throw std::out_of_range("learner maps to a hypothesis out of range");
    l.rows_[s * h_size + map[s]] = 1.0;
  }
  l.map_ = std::move(map);
  return l;
}

Learner Learner::stochastic(std::size_t h_size, std::vector<double> rows) {
  if (h_size == 0 || rows.size() % h_size != 0) {
    throw std::invalid_argument("learner rows do not tile the hypothesis count");
  }
  Learner l;
  l.num_datasets_ = rows.size() / h_size;
  l.h_size_ = h_size;
  for (std::size_t s = 0; s < l.num_datasets_; ++s) {
    // validates the row as a distribution
    FiniteDistribution(std::vector<double>(rows.begin() + s * h_size, rows.begin() + (s + 1) * h_size), 1e-10);
  }
  l.rows_ = std::move(rows);
  return l;
}

Learner erm_learner(const LearningProblem& problem, TieBreak tie_break, std::size_t cap) {
  const DatasetSpace space = dataset_space(problem, Enumeration::kFull, cap);
  const std::vector<double> sums = risk_sums(problem, space);
  const std::size_t hs = problem.h_size();
  const double tie = 1e-12 * static_cast<double>(problem.n());
  std::vector<std::size_t> map(space.size());
  std::vector<double> rows(space.size() * hs, 0.0);
  for (std::size_t s = 0; s < space.size(); ++s) {
    const double* r = sums.data() + s * hs;
    const double best = *std::min_element(r, r + hs);
    std::size_t ties = 0;
    map[s] = hs;
    for (std::size_t h = 0; h < hs; ++h) {
      if (r[h] <= best + tie) {
        if (map[s] == hs) map[s] = h;
        ++ties;
      }
    }
    for (std::size_t h = 0; h < hs; ++h)
      if (r[h] <= best + tie) rows[s * hs + h] = 1.0 / static_cast<double>(ties);
  }
  if (tie_break == TieBreak::kLowestIndex) return Learner::deterministic(hs, std::move(map));
  return Learner::stochastic(hs, std::move(rows));
}

Learner gibbs_learner(const LearningProblem& problem, double temperature, std::size_t cap) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("Gibbs temperature must be a positive real");
  }
  const DatasetSpace space = dataset_space(problem, Enumeration::kFull, cap);
  const std::vector<double> sums = risk_sums(problem, space);
  const std::size_t hs = problem.h_size();
  const double n = static_cast<double>(problem.n());
  std::vector<double> rows(space.size() * hs);
  for (std::size_t s = 0; s < space.size(); ++s) {
    const double* r = sums.data() + s * hs;
    const double best = *std::min_element(r, r + hs);
    double total = 0.0;
    for (std::size_t h = 0; h < hs; ++h) {
      rows[s * hs + h] = std::exp(-(r[h] - best) / n / temperature);
      total += rows[s * hs + h];
    }
    for (std::size_t h = 0; h < hs; ++h) rows[s * hs + h] /= total;
  }
  return Learner::stochastic(hs, std::move(rows));
}

Learner constant_learner(const LearningProblem& problem, std::size_t h, std::size_t cap) {
  const std::size_t size = checked_power(problem.z_size(), problem.n(), cap);
  return Learner::deterministic(problem.h_size(), std::vector<std::size_t>(size, h));
}

JointDistribution build_joint(const LearningProblem& problem, const Learner& learner,
                              const DatasetSpace& space) {
  if (learner.num_datasets() != space.full_size || learner.h_size() != problem.h_size()) {
    throw std::invalid_argument("learner shape does not match the problem's dataset space");
  }
  const std::size_t hs = problem.h_size();
  if (space.mode == Enumeration::kExchangeable) {
    for (std::size_t t = 0; t < space.size(); ++t) {
      const auto rep = learner.row(space.representative[t]);
      auto descending = sorted_dataset(space.counts_of(t), false);
      auto rotated = sorted_dataset(space.counts_of(t), true);
      std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
      for (const auto& perm : {descending, rotated}) {
        const auto other = learner.row(encode_dataset(perm, space.z_size));
        for (std::size_t h = 0; h < hs; ++h) {
          if (std::abs(other[h] - rep[h]) > 1e-12) {
            throw std::invalid_argument("learner is not exchangeable; use the full enumeration");
          }
        }
      }
    }
  }
  std::vector<double> mass(space.size() * hs);
  for (std::size_t s = 0; s < space.size(); ++s) {
    const auto row = learner.row(space.representative[s]);
    for (std::size_t h = 0; h < hs; ++h) mass[s * hs + h] = space.probability[s] * row[h];
  }
  return JointDistribution(space.size(), hs, std::move(mass), 1e-10);
}

JointDistribution build_joint(const LearningProblem& problem, const Learner& learner,
                              Enumeration mode, std::size_t cap) {
  return build_joint(problem, learner, dataset_space(problem, mode, cap));
}

Event generalization_event(const LearningProblem& problem, const DatasetSpace& space, double eta) {
  require_eta(eta);
  const std::size_t hs = problem.h_size();
  std::vector<double> risk(hs);
  for (std::size_t h = 0; h < hs; ++h) risk[h] = true_risk(problem, h);
  std::vector<bool> cells(space.size() * hs);
  for (std::size_t s = 0; s < space.size(); ++s) {
    for (std::size_t h = 0; h < hs; ++h) {
      const double gap = std::abs(risk[h] - empirical_risk_from_counts(problem, h, space.counts_of(s)));
      cells[s * hs + h] = gap > eta + kGapTieTolerance;
    }
  }
  return Event(space.size(), hs, std::move(cells));
}

double mcdiarmid_fiber_bound(std::size_t n, double eta) {
  require_n(n);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * eta * eta);
}

double hoeffding_fiber_bound(std::size_t n, double eta, double sigma) {
  require_n(n);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return 2.0 * std::exp(-static_cast<double>(n) * eta * eta / (2.0 * sigma * sigma));
}

ProbabilityBound cor5_bound(double i_alpha, Order alpha, std::size_t n, double eta) {
  return cor7_bound(i_alpha, alpha, n, eta, kBoundedLossSigma);
}

ProbabilityBound cor7_bound(double i_alpha, Order alpha, std::size_t n, double eta, double sigma) {
  require_info(i_alpha);
  require_n(n);
  require_eta(eta);
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (alpha.value() < 1.0) throw std::invalid_argument("order must be >= 1");
  if (alpha.is_one()) return {1.0, true};
  const double g = alpha.inverse_conjugate();
  const double tail = static_cast<double>(n) * eta * eta / (2.0 * sigma * sigma);
  // Factored as e^{gI} 2^g e^{-g tail} so the exponent of the dominant term
  // is not rounded after cancellation against ln 2.
  const double value = g * i_alpha < 700.0
                           ? std::exp(g * i_alpha) * std::exp2(g) * std::exp(-g * tail)
                           : std::exp(g * (i_alpha + kLn2 - tail));
  return {value, value >= 1.0};
}

std::optional<std::uint64_t> sample_complexity_bound(double i_alpha, Order alpha, double eta, double delta) {
  require_info(i_alpha);
  require_eta(eta);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (alpha.value() < 1.0) throw std::invalid_argument("order must be >= 1");
  if (alpha.is_one() || std::isinf(i_alpha)) return std::nullopt;
  const double gamma = conjugate(alpha);
  const double m = (i_alpha + kLn2 + gamma * std::log(1.0 / delta)) / (2.0 * eta * eta);
  return static_cast<std::uint64_t>(std::ceil(m));
}

std::vector<TableRow> baseline_table(const TableParams& p) {
  std::vector<TableRow> rows;
  if (!p.n || !p.eta || !p.delta) return rows;
  require_n(*p.n);
  require_eta(*p.eta);
  if (!(*p.delta > 0.0 && *p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double n = static_cast<double>(*p.n);
  const double eta = *p.eta;
  const double delta = *p.delta;
  const double eta2 = eta * eta;

  if (p.dp_epsilon) {
    rows.push_back({"eps-DP", "Yes", "Yes", 0.25 * std::exp(-n * eta2 / 12.0),
                    12.0 * std::log(1.0 / (4.0 * delta)) / eta2, *p.dp_epsilon <= eta / 2.0});
  }
  if (p.mi) {
    const double denom = 2.0 * n * eta2 - 1.0;
    rows.push_back({"MI", "Yes", "Yes", denom > 0.0 ? (*p.mi + 1.0) / denom : kInf,
                    *p.mi / (eta2 * delta), true});
  }
  if (p.leakage) {
    rows.push_back({"Maximal Leakage", "Yes", "Yes", 2.0 * std::exp(*p.leakage - 2.0 * n * eta2),
                    (*p.leakage + std::log(2.0 / delta)) / (2.0 * eta2), true});
  }
  if (p.i_alpha && p.alpha) {
    const auto m = sample_complexity_bound(*p.i_alpha, *p.alpha, eta, delta);
    rows.push_back({"alpha-Sibson MI", "Yes", "Unknown", cor5_bound(*p.i_alpha, *p.alpha, *p.n, eta).value,
                    m ? static_cast<double>(*m) : kInf, true});
  }
  if (p.vc_k) {
    const double log_k = std::log(*p.vc_k);
    rows.push_back({"VC-Dim K", "", "", 2.0 * std::exp(log_k - 2.0 * n * eta2),
                    (log_k + std::log(2.0 / delta)) / (2.0 * eta2), true});
  }
  return rows;
}

}  // namespace alphaleak
