// Acceptance harness. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every random instance comes from a fixed
// seed, so a failing line reproduces exactly.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "alphaleak/bounds.hpp"
#include "alphaleak/commands.hpp"
#include "alphaleak/digest.hpp"
#include "alphaleak/expectation.hpp"
#include "alphaleak/learning.hpp"
#include "alphaleak/measures.hpp"
#include "alphaleak/problem_spec.hpp"
#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace alphaleak;
using testkit::Rng;

namespace {

constexpr double kE = 2.71828182845904523536;

// Accumulates failures for one criterion; the first few are kept for the log.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  void note(const std::string& text) { info_.push_back(text); }
  bool ok() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::string>& info() const { return info_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> info_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

LearningProblem desk() {
  return LearningProblem(FiniteDistribution::bernoulli(0.5), 6, {{0.0, 1.0}, {1.0, 0.0}});
}

struct NamedLearner {
  std::string name;
  Learner learner;
};

std::vector<NamedLearner> desk_learners(const LearningProblem& p) {
  std::vector<NamedLearner> out;
  out.push_back({"erm", erm_learner(p, TieBreak::kLowestIndex)});
  for (double t : {0.1, 1.0, 10.0}) out.push_back({"gibbs T=" + fmt(t), gibbs_learner(p, t)});
  return out;
}

const std::vector<double> kEtas{0.1, 0.2, 0.3, 0.45};
const std::vector<Order> kLearningAlphas{Order::of(1.5), Order::of(2.0), Order::of(4.0), Order::infinity()};

// 1. Closed form against the definitional minimization over Q_Y.
void closed_form_vs_oracle(Tally& t) {
  Rng rng(1001);
  const std::vector<Order> alphas{Order::of(0.5), Order::of(1.5), Order::of(2.0), Order::of(5.0)};
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto joint = testkit::random_joint_upto(rng, 4, 4);
    for (Order a : alphas) {
      const double gap = std::abs(sibson_mi(joint, a) - sibson_mi_minimization_oracle(joint, a, 1000));
      worst = std::max(worst, gap);
      t.check(gap <= 1e-4, "trial " + std::to_string(trial) + " alpha " + to_string(a) + " gap " + fmt(gap));
    }
  }
  t.note("max gap " + fmt(worst));
}

// 2. lhs <= rhs + 1e-9 for every bound on random joints and events.
void bound_validity(Tally& t) {
  Rng rng(2002);
  const std::vector<Order> alphas{Order::one(),     Order::of(1.01), Order::of(1.5),    Order::of(2.0),
                                  Order::of(4.0),   Order::of(10.0), Order::infinity()};
  for (int trial = 0; trial < 1000; ++trial) {
    const auto joint = testkit::random_joint_upto(rng, 6, 6);
    for (int e = 0; e < 10; ++e) {
      const auto event = testkit::random_event(rng, joint.nx(), joint.ny());
      auto record = [&](const BoundReport& r, const char* label, Order a) {
        t.check(r.lhs <= r.rhs + kHoldsTolerance,
                std::string(label) + " trial " + std::to_string(trial) + " alpha " + to_string(a) + " lhs " +
                    fmt(r.lhs) + " rhs " + fmt(r.rhs));
      };
      record(corollary_leakage_bound(joint, event), "leakage", Order::infinity());
      for (Order a : alphas) {
        for (Order ap : {Order::of(1.01), Order::of(2.0), a})
          record(theorem1_bound(joint, event, HolderPair(a, ap)), "theorem1", a);
        record(corollary_alpha_div_bound(joint, event, a), "alpha_div", a);
        record(corollary_sibson_bound(joint, event, a), "sibson", a);
      }
    }
  }
}

// 3. Special cases of the general bound coincide with the corollaries.
void reductions(Tally& t) {
  Rng rng(3003);
  for (int trial = 0; trial < 200; ++trial) {
    const auto joint = testkit::random_joint_upto(rng, 5, 5);
    const auto event = testkit::random_event(rng, joint.nx(), joint.ny());
    const std::string at = "trial " + std::to_string(trial);
    for (Order a : {Order::of(1.5), Order::of(2.0), Order::of(4.0)}) {
      const double same = theorem1_bound(joint, event, HolderPair(a, a)).rhs;
      const double div = corollary_alpha_div_bound(joint, event, a).rhs;
      t.check(std::abs(same - div) <= 1e-10, at + " alpha'=alpha " + fmt(same) + " vs " + fmt(div));
      const double near_one = theorem1_bound(joint, event, HolderPair(a, Order::of(1.0 + 1e-6))).rhs;
      const double sib = corollary_sibson_bound(joint, event, a).rhs;
      t.check(std::abs(near_one - sib) <= 1e-4, at + " alpha'->1 " + fmt(near_one) + " vs " + fmt(sib));
    }
    const double big = corollary_sibson_bound(joint, event, Order::of(1e4)).rhs;
    const double leak = corollary_leakage_bound(joint, event).rhs;
    t.check(std::abs(big - leak) <= 1e-3 * std::max(std::abs(leak), 1e-300),
            at + " alpha=1e4 " + fmt(big) + " vs leakage " + fmt(leak));
  }
}

// 4. The leakage bound is attained on the binary symmetric joint.
void tight_instance(Tally& t) {
  const JointDistribution bsc({{0.4, 0.1}, {0.1, 0.4}});
  const auto r = corollary_leakage_bound(bsc, Event::diagonal(2));
  t.check(std::abs(r.lhs - 0.8) <= 1e-12, "lhs " + fmt(r.lhs));
  t.check(std::abs(r.rhs - 0.8) <= 1e-12, "rhs " + fmt(r.rhs));
  t.check(std::abs(r.rhs - r.lhs) <= 1e-12, "rhs - lhs " + fmt(r.rhs - r.lhs));
}

// 5. Order limits and monotonicity in the order.
void limits_and_monotonicity(Tally& t) {
  Rng rng(5005);
  const std::vector<double> grid{0.1, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0, 50.0, kInf};
  auto order_of = [](double a) {
    return a == 1.0 ? Order::one() : (std::isinf(a) ? Order::infinity() : Order::of(a));
  };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nx = rng.index(2, 5);
    const std::size_t ny = rng.index(2, 5);
    const auto joint = testkit::random_joint(rng, nx, ny);
    const std::string at = "trial " + std::to_string(trial);
    const double mi = testkit::naive_mutual_information(joint);
    const double leak = testkit::naive_leakage(joint);
    t.check(std::abs(sibson_mi(joint, Order::of(1.0 + 1e-4)) - mi) <= 1e-3, at + " alpha -> 1");
    t.check(std::abs(sibson_mi(joint, Order::of(1e4)) - leak) <= 1e-3, at + " alpha -> inf");

    const auto p = testkit::random_distribution(rng, nx + ny);
    const auto q = testkit::random_distribution(rng, nx + ny);
    double prev_div = -kInf;
    double prev_mi = -kInf;
    for (double a : grid) {
      const double div = renyi_divergence(p, q, order_of(a));
      const double info = sibson_mi(joint, order_of(a));
      t.check(div >= prev_div - 1e-10, at + " divergence drops at alpha " + fmt(a));
      t.check(info >= prev_mi - 1e-10, at + " sibson drops at alpha " + fmt(a));
      prev_div = div;
      prev_mi = info;
    }
  }
}

// 6. Post-processing Y cannot increase the information measures.
void data_processing(Tally& t) {
  Rng rng(6006);
  const std::vector<Order> alphas{Order::of(0.5), Order::one(), Order::of(1.5), Order::of(2.0),
                                  Order::of(4.0), Order::infinity()};
  for (int trial = 0; trial < 200; ++trial) {
    const auto joint = testkit::random_joint_upto(rng, 5, 5);
    const auto channel = testkit::random_channel(rng, joint.ny(), rng.index(1, 5));
    const auto garbled = joint.garble(channel);
    const std::string at = "trial " + std::to_string(trial);
    for (Order a : alphas)
      t.check(sibson_mi(garbled, a) <= sibson_mi(joint, a) + 1e-10, at + " alpha " + to_string(a));
    t.check(maximal_leakage(garbled) <= maximal_leakage(joint) + 1e-10, at + " leakage");
  }
}

// 7. Exact tail probabilities on the n = 6 instance against the corollaries.
void learning_end_to_end(Tally& t) {
  const auto problem = desk();
  const auto space = dataset_space(problem);
  t.check(space.size() == 64, "dataset count " + std::to_string(space.size()));
  for (const auto& [name, learner] : desk_learners(problem)) {
    const auto joint = build_joint(problem, learner, space);
    for (double eta : kEtas) {
      const auto event = generalization_event(problem, space, eta);
      const double exact = event_probability(joint, event);
      const std::string at = name + " eta " + fmt(eta);
      for (Order a : kLearningAlphas) {
        const auto bound = cor5_bound(sibson_mi(joint, a), a, problem.n(), eta);
        t.check(exact <= bound.value + kHoldsTolerance,
                at + " alpha " + to_string(a) + " " + fmt(exact) + " > " + fmt(bound.value));
      }
      const double fiber_cap = 2.0 * std::exp(-2.0 * 6.0 * eta * eta);
      for (std::size_t h = 0; h < problem.h_size(); ++h) {
        // Independent count: datasets s with |L_P(h) - L_S(h)| > eta, each of mass 2^-6.
        int hits = 0;
        for (std::size_t s = 0; s < 64; ++s) {
          const auto d = decode_dataset(s, 2, 6);
          double loss = 0.0;
          for (std::size_t z : d) loss += problem.loss(h, z);
          if (std::abs(0.5 - loss / 6.0) > eta + kGapTieTolerance) ++hits;
        }
        const double fiber = fiber_probability(joint, event, h);
        t.check(fiber == hits / 64.0, at + " fiber " + std::to_string(h) + " " + fmt(fiber));
        t.check(fiber <= fiber_cap, at + " fiber " + std::to_string(h) + " above " + fmt(fiber_cap));
      }
    }
  }
  const auto constant = build_joint(problem, constant_learner(problem, 0), space);
  const double p = event_probability(constant, generalization_event(problem, space, 0.3));
  t.check(p == 14.0 / 64.0, "constant predictor tail " + fmt(p));
}

// 8. Expected generalization error against its bounds.
void expected_generalization(Tally& t) {
  const auto problem = desk();
  const double exact = exact_expected_generr(problem, constant_learner(problem, 0));
  t.check(exact == 10.0 / 64.0, "constant learner " + fmt(exact));
  const double leak_bound = leakage_expected_bound(6, 0.0);
  t.check(exact <= leak_bound, fmt(exact) + " above leakage bound " + fmt(leak_bound));
  t.check(std::abs(leak_bound - 0.41371) <= 1e-5, "leakage bound " + fmt(leak_bound));

  int flagged = 0;
  int rows = 0;
  for (const auto& [name, learner] : desk_learners(problem)) {
    const auto joint = build_joint(problem, learner);
    const double lhs = exact_expected_generr(problem, learner);
    for (Order a : kLearningAlphas) {
      const auto bound = expected_generr_bound(problem.n(), problem.sigma(), a, sibson_mi(joint, a));
      ++rows;
      if (bound.b_below_e) ++flagged;
      t.check(lhs <= bound.value + kHoldsTolerance,
              name + " alpha " + to_string(a) + " " + fmt(lhs) + " > " + fmt(bound.value));
    }
  }
  t.note("b<e flagged " + std::to_string(flagged) + "/" + std::to_string(rows));

  for (double a : {0.05, 0.3, 1.0, 2.5, 7.0})
    for (double b : {kE, 4.0, 10.0, 100.0, 1e4}) {
      const auto check = lemma9_numeric_check(TailBoundSpec::strict(a, b), 1000);
      t.check(check.numeric_integral <= check.bound + 1e-9,
              "a " + fmt(a) + " b " + fmt(b) + " " + fmt(check.numeric_integral) + " > " + fmt(check.bound));
    }
}

// 9. Closed-form fixtures evaluated by hand.
void formula_fixtures(Tally& t) {
  const double ln2 = std::log(2.0);
  const double cor5 = cor5_bound(ln2, Order::infinity(), 100, 0.2).value;
  const double expected = 4.0 * std::exp(-8.0);
  t.check(std::abs(cor5 - expected) <= 1e-15 * expected, "cor5 " + fmt(cor5));
  const auto m = sample_complexity_bound(ln2, Order::infinity(), 0.1, 0.05);
  t.check(m.has_value() && *m == 220, "sample complexity " + (m ? std::to_string(*m) : std::string("none")));
  const double tail = tail_to_expectation(TailBoundSpec::strict(1.0, kE)).value;
  t.check(std::abs(tail - 1.68547) <= 1e-5, "tail to expectation " + fmt(tail));

  TableParams params;
  params.n = 100;
  params.eta = 0.2;
  params.delta = 0.05;
  params.dp_epsilon = 0.05;
  params.mi = 0.5;
  params.leakage = ln2;
  params.i_alpha = ln2;
  params.alpha = Order::infinity();
  params.vc_k = 2.0;
  const auto table = cli::cmd_table(params);
  t.check(table.csv ==
              "name,robust,adaptive,bound,sample_complexity\n"
              "eps-DP,Yes,Yes,0.179132827643,482.83137373\n"
              "MI,Yes,Yes,0.214285714286,250\n"
              "Maximal Leakage,Yes,Yes,0.00134185051161,54.7753329334\n"
              "alpha-Sibson MI,Yes,Unknown,0.00134185051161,55\n"
              "VC-Dim K,,,0.00134185051161,54.7753329334\n",
          "table csv:\n" + table.csv);
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(ALPHALEAK_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 10. Same input and seed give the same bytes; a broken bound changes the exit code.
void cli_determinism(Tally& t) {
  const std::string text =
      "data = 0.5, 0.5\n"
      "loss = 0, 1; 1, 0\n"
      "n = 6\n"
      "learner = erm\n"
      "tie_break = lowest_index\n"
      "seed = 42\n";
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return cli::parse_problem_spec(in, "desk.spec");
  };
  const auto first = cli::cmd_verify(parse(text), cli::Units::kNats);
  const auto second = cli::cmd_verify(parse(text), cli::Units::kNats);
  t.check(cli::sha256_hex(first.csv) == cli::sha256_hex(second.csv), "in-process csv differs");
  t.check(first.exit_code == cli::kExitOk, "desk verify exit " + std::to_string(first.exit_code));
  auto injected = parse(text);
  injected.rhs_scale = 1e-3;
  const auto broken = cli::cmd_verify(injected, cli::Units::kNats);
  t.check(broken.exit_code == cli::kExitViolation, "injected exit " + std::to_string(broken.exit_code));

  const auto dir = std::filesystem::temp_directory_path() / ("alphaleak_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  };
  const auto spec = write("desk.spec", text);
  const auto bad = write("bad.spec", text + "rhs_scale = 0.001\n");
  const auto a = (dir / "a.csv").string();
  const auto b = (dir / "b.csv").string();
  t.check(run_tool("verify " + spec + " --seed 9 --out " + a) == cli::kExitOk, "tool run a");
  t.check(run_tool("verify " + spec + " --seed 9 --out " + b) == cli::kExitOk, "tool run b");
  t.check(std::filesystem::exists(a) && cli::sha256_file(a) == cli::sha256_file(b), "tool csv differs");
  t.check(run_tool("verify " + bad) == cli::kExitViolation, "tool injected exit");
  std::filesystem::remove_all(dir);
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<void(Tally&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"closed-form Sibson MI matches minimization oracle", 60.0, closed_form_vs_oracle},
      {"bound validity sweep", 120.0, bound_validity},
      {"reduction identities", 60.0, reductions},
      {"tight leakage instance", 5.0, tight_instance},
      {"order limits and monotonicity", 60.0, limits_and_monotonicity},
      {"data processing", 60.0, data_processing},
      {"learning end-to-end on n=6", 5.0, learning_end_to_end},
      {"expected generalization error", 60.0, expected_generalization},
      {"formula fixtures", 5.0, formula_fixtures},
      {"cli determinism", 60.0, cli_determinism},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally);
    } catch (const std::exception& e) {
      tally.check(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    tally.check(seconds <= c.budget_seconds, "runtime " + fmt(seconds) + " s over budget " + fmt(c.budget_seconds));
    const bool ok = tally.ok();
    if (!ok) ++failed;
    std::printf("%s [%2d] %s (%zu checks, %.2f s", ok ? "PASS" : "FAIL", index, c.name, tally.checks(), seconds);
    for (const auto& info : tally.info()) std::printf("; %s", info.c_str());
    std::printf(")\n");
    for (const auto& note : tally.notes()) std::printf("      %s\n", note.c_str());
    if (tally.failures() > tally.notes().size())
      std::printf("      ... %zu more failures\n", tally.failures() - tally.notes().size());
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
