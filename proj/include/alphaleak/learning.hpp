#pragma once

// Finite learning problems, learners as channels from datasets to
// hypotheses, and the exact (dataset, hypothesis) joint they induce.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alphaleak/bounds.hpp"
#include "alphaleak/distribution.hpp"
#include "alphaleak/order.hpp"

namespace alphaleak {

inline constexpr std::size_t kDefaultDatasetCap = 1'000'000;

// Sub-Gaussian parameter of any loss bounded in [0, 1] (Hoeffding's lemma).
inline constexpr double kBoundedLossSigma = 0.5;

class LearningProblem {
 public:
  // loss[h][z]. sigma defaults to 1/2 and then requires losses in [0, 1];
  // an explicit sigma is accepted as asserted by the caller.
  LearningProblem(FiniteDistribution data, std::size_t n, std::vector<std::vector<double>> loss,
                  std::optional<double> sigma = std::nullopt);

  std::size_t z_size() const { return data_.size(); }
  std::size_t h_size() const { return h_size_; }
  std::size_t n() const { return n_; }
  const FiniteDistribution& data() const { return data_; }
  double loss(std::size_t h, std::size_t z) const { return loss_[h * z_size() + z]; }
  double sigma() const { return sigma_; }
  bool sigma_user_asserted() const { return sigma_user_asserted_; }
  // Every loss entry lies in [0, 1].
  bool loss_in_unit_interval() const;
  // Every loss entry is exactly 0 or 1.
  bool zero_one_loss() const;

 private:
  FiniteDistribution data_;
  std::size_t n_;
  std::size_t h_size_;
  std::vector<double> loss_;
  double sigma_;
  bool sigma_user_asserted_;
};

enum class Enumeration {
  kFull,          // all z_size^n datasets, lexicographic (first position most significant)
  kExchangeable,  // one row per type (count vector), multinomial weights
};

/// Rows of the dataset axis of the joint. In full mode row s is dataset s;
/// in exchangeable mode row t is a type whose representative is its
/// lexicographically smallest dataset.
struct DatasetSpace {
  Enumeration mode = Enumeration::kFull;
  std::size_t z_size = 0;
  std::size_t n = 0;
  std::size_t full_size = 0;                 // z_size^n
  std::vector<double> probability;           // per row
  std::vector<std::uint32_t> counts;         // row-major rows x z_size
  std::vector<std::size_t> representative;   // full-space index per row

  std::size_t size() const { return probability.size(); }
  std::span<const std::uint32_t> counts_of(std::size_t row) const {
    return {counts.data() + row * z_size, z_size};
  }
};

// Throws std::length_error when z_size^n exceeds cap.
DatasetSpace dataset_space(const LearningProblem& problem, Enumeration mode = Enumeration::kFull,
                           std::size_t cap = kDefaultDatasetCap);

// Digits (sample values) of full-space dataset `index`.
std::vector<std::size_t> decode_dataset(std::size_t index, std::size_t z_size, std::size_t n);
std::size_t encode_dataset(std::span<const std::size_t> dataset, std::size_t z_size);

// (1/n) sum_i loss(h, z_i); throws std::out_of_range on bad indices.
double empirical_risk(const LearningProblem& problem, std::size_t h, std::span<const std::size_t> dataset);
// Same from a count vector.
double empirical_risk_from_counts(const LearningProblem& problem, std::size_t h,
                                  std::span<const std::uint32_t> counts);
// sum_z P(z) loss(h, z).
double true_risk(const LearningProblem& problem, std::size_t h);

/// Channel P_{H|S} over the full dataset space. Deterministic learners keep
/// their map and are also stored as one-hot rows.
class Learner {
 public:
  static Learner deterministic(std::size_t h_size, std::vector<std::size_t> map);
  static Learner stochastic(std::size_t h_size, std::vector<double> rows);

  bool is_deterministic() const { return deterministic_; }
  std::size_t num_datasets() const { return num_datasets_; }
  std::size_t h_size() const { return h_size_; }
  std::span<const double> row(std::size_t dataset) const {
    return {rows_.data() + dataset * h_size_, h_size_};
  }
  // Only meaningful for deterministic learners.
  const std::vector<std::size_t>& map() const { return map_; }

 private:
  Learner() = default;

  bool deterministic_ = false;
  std::size_t num_datasets_ = 0;
  std::size_t h_size_ = 0;
  std::vector<std::size_t> map_;
  std::vector<double> rows_;
};

enum class TieBreak { kLowestIndex, kUniformRandom };

// Empirical risk minimizer. kUniformRandom spreads mass uniformly over the
// argmin set (so the row is stochastic whenever there is a tie).
Learner erm_learner(const LearningProblem& problem, TieBreak tie_break,
                    std::size_t cap = kDefaultDatasetCap);
// Row mass proportional to exp(-empirical_risk / temperature).
Learner gibbs_learner(const LearningProblem& problem, double temperature,
                      std::size_t cap = kDefaultDatasetCap);
Learner constant_learner(const LearningProblem& problem, std::size_t h,
                         std::size_t cap = kDefaultDatasetCap);

/// mass(s, h) = P^n(s) P_{H|S}(h | s). In exchangeable mode the learner is
/// first certified to be permutation invariant on every type (three
/// permutations per type); violations throw std::invalid_argument.
JointDistribution build_joint(const LearningProblem& problem, const Learner& learner,
                              const DatasetSpace& space);
JointDistribution build_joint(const LearningProblem& problem, const Learner& learner,
                              Enumeration mode = Enumeration::kFull,
                              std::size_t cap = kDefaultDatasetCap);

// Ties |L_P - L_S| == eta are resolved as "not in the event" within this slack.
inline constexpr double kGapTieTolerance = 1e-12;

/// E = {(S, h) : |L_P(h) - L_S(h)| > eta} over the rows of `space`.
Event generalization_event(const LearningProblem& problem, const DatasetSpace& space, double eta);

// 2 exp(-2 n eta^2).
double mcdiarmid_fiber_bound(std::size_t n, double eta);
// 2 exp(-n eta^2 / (2 sigma^2)).
double hoeffding_fiber_bound(std::size_t n, double eta, double sigma);

struct ProbabilityBound {
  double value = 1.0;
  bool vacuous = true;  // value >= 1
};

// exp(((alpha-1)/alpha) (I + ln 2 - 2 n eta^2)); alpha = 1 is the trivial bound 1.
ProbabilityBound cor5_bound(double i_alpha, Order alpha, std::size_t n, double eta);
// exp((1/gamma) (I + ln 2 - n eta^2 / (2 sigma^2))).
ProbabilityBound cor7_bound(double i_alpha, Order alpha, std::size_t n, double eta, double sigma);

/// Smallest m with m >= (I + ln 2 + gamma ln(1/delta)) / (2 eta^2).
/// std::nullopt encodes the infinite requirement at alpha = 1.
std::optional<std::uint64_t> sample_complexity_bound(double i_alpha, Order alpha, double eta, double delta);

struct TableParams {
  std::optional<std::size_t> n;
  std::optional<double> eta;
  std::optional<double> delta;
  std::optional<double> mi;
  std::optional<double> leakage;
  std::optional<double> i_alpha;
  std::optional<Order> alpha;
  std::optional<double> vc_k;
  std::optional<double> dp_epsilon;
};

struct TableRow {
  std::string name;
  std::string robust;
  std::string adaptive;
  double bound = 0.0;
  double sample_complexity = 0.0;  // +inf when unbounded
  bool condition_met = true;       // eps-DP row: epsilon <= eta / 2
};

/// Baseline comparison rows in the order eps-DP, MI, Maximal Leakage,
/// alpha-Sibson MI, VC-Dim K. A row appears only when its parameters are
/// present (n, eta and delta are needed by every row).
std::vector<TableRow> baseline_table(const TableParams& params);

}  // namespace alphaleak
