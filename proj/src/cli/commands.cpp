#include "alphaleak/commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "alphaleak/expectation.hpp"
#include "alphaleak/grid_io.hpp"
#include "alphaleak/measures.hpp"

namespace alphaleak::cli {

const char* const kToolVersion = "0.1.0";

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

std::string order_field(Order a) { return a.is_infinite() ? "inf" : format_number(a.value()); }

// Uniform in [0, 1) from the top 53 bits; independent of the library's
// distribution implementations so generated bytes are portable.
double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t size) {
  std::vector<double> w(size);
  for (double& v : w) v = 0.05 + unit_real(rng);
  const FiniteDistribution d = FiniteDistribution::normalized(std::move(w));
  return {d.mass().begin(), d.mass().end()};
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& [path, digest] : input_digests) inputs.push_back({{"path", path}, {"sha256", digest}});
  return {{"seed", seed},
          {"tool_version", tool_version},
          {"command", command},
          {"inputs", inputs},
          {"units", to_string(units)}};
}

CommandResult cmd_measure(const JointDistribution& joint, const std::vector<Order>& alphas, Units units) {
  CommandResult result;
  result.csv = csv_line({"quantity", "alpha", "value", "units"});
  for (Order a : alphas) {
    result.csv += csv_line({"renyi_divergence", order_field(a),
                            format_information(divergence_from_independence(joint, a), units), to_string(units)});
    result.csv += csv_line({"sibson_mi", order_field(a), format_information(sibson_mi(joint, a), units),
                            to_string(units)});
  }
  result.csv += csv_line({"maximal_leakage", "inf", format_information(maximal_leakage(joint), units),
                          to_string(units)});
  result.csv += csv_line({"mutual_information", "1", format_information(mutual_information(joint), units),
                          to_string(units)});
  return result;
}

CommandResult cmd_bound(const JointDistribution& joint, const Event& event, BoundKind kind, Order alpha,
                        std::optional<Order> alpha_prime) {
  if (event.nx() != joint.nx() || event.ny() != joint.ny()) {
    return {"", "dimension mismatch: joint is " + std::to_string(joint.nx()) + "x" + std::to_string(joint.ny()) +
                    ", event is " + std::to_string(event.nx()) + "x" + std::to_string(event.ny()) + "\n",
            kExitUsage};
  }
  BoundReport r;
  switch (kind) {
    case BoundKind::kTheorem1:
      if (!alpha_prime) return {"", "kind theorem1 requires --alpha-prime\n", kExitUsage};
      r = theorem1_bound(joint, event, HolderPair(alpha, *alpha_prime));
      break;
    case BoundKind::kAlphaDivergence:
      r = corollary_alpha_div_bound(joint, event, alpha);
      break;
    case BoundKind::kSibson:
      r = corollary_sibson_bound(joint, event, alpha);
      break;
    case BoundKind::kLeakage:
      r = corollary_leakage_bound(joint, event);
      break;
  }
  CommandResult result;
  result.csv = csv_line({"kind", "alpha", "alpha_prime", "gamma", "gamma_prime", "lhs", "rhs", "slack", "holds"});
  result.csv += csv_line({to_string(r.kind), order_field(r.alpha), order_field(r.alpha_prime),
                          format_number(r.gamma), format_number(r.gamma_prime), format_number(r.lhs),
                          format_number(r.rhs), format_number(r.slack), flag(r.holds)});
  result.exit_code = r.holds ? kExitOk : kExitViolation;
  return result;
}

CommandResult cmd_sweep(const JointDistribution& joint, const Event& event, const std::vector<Order>& grid,
                        BoundKind kind) {
  if (grid.empty()) return {"", "empty order grid\n", kExitUsage};
  if (kind != BoundKind::kSibson && kind != BoundKind::kAlphaDivergence) {
    return {"", std::string("sweep supports kinds sibson and alpha_div, got ") + to_string(kind) + "\n",
            kExitUsage};
  }
  if (event.nx() != joint.nx() || event.ny() != joint.ny()) return {"", "dimension mismatch\n", kExitUsage};
  CommandResult result;
  result.csv = csv_line({"alpha", "info_term", "fiber_term", "rhs"});
  for (Order a : grid) {
    const BoundReport r = kind == BoundKind::kSibson ? corollary_sibson_bound(joint, event, a)
                                                     : corollary_alpha_div_bound(joint, event, a);
    result.csv += csv_line({order_field(a), format_number(r.info_term), format_number(r.fiber_term),
                            format_number(r.rhs)});
  }
  const auto [best, report] = best_order(joint, event, grid, kind);
  result.diagnostics = "best alpha: " + order_field(best) + " (rhs " + format_number(report.rhs) + ")\n";
  return result;
}

CommandResult cmd_verify(const ProblemSpec& spec, Units units) {
  const LearningProblem problem = spec.problem();
  const Learner learner = spec.make_learner();
  const DatasetSpace space = dataset_space(problem, spec.enumeration, spec.cap);
  const JointDistribution joint = build_joint(problem, learner, space);
  const bool unit_loss = problem.loss_in_unit_interval();
  const double scale = spec.rhs_scale;

  std::vector<double> info(spec.alphas.size());
  for (std::size_t i = 0; i < spec.alphas.size(); ++i) info[i] = sibson_mi(joint, spec.alphas[i]);

  CommandResult result;
  result.csv = csv_line({"eta", "alpha", "kind", "i_alpha", "lhs", "rhs", "slack", "holds", "b_below_e"});
  bool all_hold = true;
  auto emit = [&](const std::string& eta, const std::string& alpha, const char* kind, const std::string& i_alpha,
                  double lhs, double rhs, const std::string& b_below_e) {
    rhs *= scale;
    const bool holds = lhs <= rhs + kHoldsTolerance;
    all_hold = all_hold && holds;
    result.csv += csv_line({eta, alpha, kind, i_alpha, format_number(lhs), format_number(rhs),
                            format_number(rhs - lhs), flag(holds), b_below_e});
  };

  for (double eta : spec.etas) {
    const Event event = generalization_event(problem, space, eta);
    const double p_event = event_probability(joint, event);
    double worst_fiber = 0.0;
    for (std::size_t h = 0; h < joint.ny(); ++h) worst_fiber = std::max(worst_fiber, fiber_probability(joint, event, h));
    const std::string eta_field = format_number(eta);

    if (unit_loss) emit(eta_field, "", "mcdiarmid_fiber", "", worst_fiber, mcdiarmid_fiber_bound(problem.n(), eta), "");
    emit(eta_field, "", "hoeffding_fiber", "", worst_fiber,
         hoeffding_fiber_bound(problem.n(), eta, problem.sigma()), "");

    for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
      const Order a = spec.alphas[i];
      const std::string a_field = order_field(a);
      const std::string i_field = format_information(info[i], units);
      const BoundReport cor3 = corollary_sibson_bound(joint, event, a);
      emit(eta_field, a_field, "cor3", i_field, cor3.lhs, cor3.rhs, "");
      if (unit_loss) emit(eta_field, a_field, "cor5", i_field, p_event, cor5_bound(info[i], a, problem.n(), eta).value, "");
      emit(eta_field, a_field, "cor7", i_field, p_event,
           cor7_bound(info[i], a, problem.n(), eta, problem.sigma()).value, "");
    }
  }

  const double expected = exact_expected_generr(problem, learner, spec.enumeration, spec.cap);
  for (std::size_t i = 0; i < spec.alphas.size(); ++i) {
    const Order a = spec.alphas[i];
    if (a.value() <= 1.0) continue;
    const FlaggedValue bound = expected_generr_bound(problem.n(), problem.sigma(), a, info[i]);
    emit("", order_field(a), "thm10", format_information(info[i], units), expected, bound.value,
         flag(bound.b_below_e));
  }
  if (unit_loss) {
    const double leakage = maximal_leakage(joint);
    emit("", "inf", "leakage_expected", format_information(leakage, units), expected,
         leakage_expected_bound(problem.n(), leakage), "");
  }
  result.exit_code = all_hold ? kExitOk : kExitViolation;
  if (!all_hold) result.diagnostics = "at least one bound is violated\n";
  return result;
}

CommandResult cmd_table(const TableParams& params) {
  CommandResult result;
  result.csv = csv_line({"name", "robust", "adaptive", "bound", "sample_complexity"});
  if (!params.n || !params.eta || !params.delta) {
    result.diagnostics = "every row needs n, eta and delta; no rows emitted\n";
    return result;
  }
  if (!params.dp_epsilon) result.diagnostics += "eps-DP row omitted: dp_epsilon missing\n";
  if (!params.mi) result.diagnostics += "MI row omitted: mi missing\n";
  if (!params.leakage) result.diagnostics += "Maximal Leakage row omitted: leakage missing\n";
  if (!params.i_alpha || !params.alpha) result.diagnostics += "alpha-Sibson MI row omitted: i_alpha and alpha needed\n";
  if (!params.vc_k) result.diagnostics += "VC-Dim K row omitted: vc_k missing\n";
  for (const TableRow& row : baseline_table(params)) {
    result.csv += csv_line({row.name, row.robust, row.adaptive, format_number(row.bound),
                            format_number(row.sample_complexity)});
    if (!row.condition_met) result.diagnostics += row.name + " row: validity condition epsilon <= eta/2 not met\n";
  }
  return result;
}

std::string generate_instance(std::uint64_t seed, GeneratedKind kind) {
  std::mt19937_64 rng(seed);
  if (kind == GeneratedKind::kJoint) {
    const std::size_t nx = pick(rng, 2, 4);
    const std::size_t ny = pick(rng, 2, 4);
    const auto flat = random_simplex_point(rng, nx * ny);
    std::ostringstream out;
    write_joint_csv(out, JointDistribution(nx, ny, flat));
    return out.str();
  }
  ProblemSpec spec;
  const std::size_t z = pick(rng, 2, 3);
  const std::size_t h = pick(rng, 2, 3);
  spec.data = random_simplex_point(rng, z);
  spec.loss.assign(h, std::vector<double>(z));
  for (auto& row : spec.loss)
    for (double& v : row) v = static_cast<double>(rng() & 1U);
  spec.n = pick(rng, 3, 6);
  spec.seed = seed;
  return "# generated with seed " + std::to_string(seed) + "\n" + render_problem_spec(spec);
}

}  // namespace alphaleak::cli
