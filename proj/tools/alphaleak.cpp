// alphaleak: measures, change-of-measure bounds and exact learning-bound
// verification on finite alphabets.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "alphaleak/commands.hpp"
#include "alphaleak/digest.hpp"
#include "alphaleak/grid_io.hpp"
#include "alphaleak/problem_spec.hpp"

namespace {

using namespace alphaleak;
using namespace alphaleak::cli;

struct Options {
  std::string joint_path;
  std::string event_path;
  std::string spec_path;
  std::string alpha = "0.5,1,2,inf";
  std::string alpha_prime;
  std::string kind;
  std::string eta;
  std::optional<double> delta;
  std::string units = "nats";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cap;
  std::string out;
  std::string gen_kind = "problem";
};

int emit(const CommandResult& result, const Options& opt, RunManifest manifest) {
  std::cerr << result.diagnostics;
  if (opt.out.empty()) {
    std::cout << result.csv;
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    file << result.csv;
    if (!file) throw std::runtime_error(opt.out + ": cannot write");
    std::ofstream side(opt.out + ".manifest.json", std::ios::binary);
    side << manifest.to_json().dump(2) << '\n';
    if (!side) throw std::runtime_error(opt.out + ".manifest.json: cannot write");
  }
  return result.exit_code;
}

RunManifest manifest_for(const std::string& command, const std::vector<std::string>& inputs, Units units,
                         std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.units = units;
  m.seed = seed;
  for (const auto& path : inputs) m.input_digests.emplace_back(path, sha256_file(path));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi divergence, Sibson mutual information and maximal leakage toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options opt;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "CSV destination (default stdout)"); };

  auto* measure = app.add_subcommand("measure", "Divergence, Sibson MI, leakage and MI of a joint");
  measure->add_option("joint", opt.joint_path, "Joint CSV grid")->required()->check(CLI::ExistingFile);
  measure->add_option("--alpha", opt.alpha, "Comma-separated orders ('inf' allowed)");
  measure->add_option("--units", opt.units, "nats or bits");
  add_out(measure);

  auto* bound = app.add_subcommand("bound", "Evaluate one change-of-measure bound");
  bound->add_option("joint", opt.joint_path, "Joint CSV grid")->required()->check(CLI::ExistingFile);
  bound->add_option("event", opt.event_path, "Event 0/1 grid")->required()->check(CLI::ExistingFile);
  bound->add_option("--kind", opt.kind, "theorem1 | alpha_div | sibson | leakage")->required();
  bound->add_option("--alpha", opt.alpha, "Order alpha");
  bound->add_option("--alpha-prime", opt.alpha_prime, "Second order (theorem1 only)");
  add_out(bound);

  auto* sweep = app.add_subcommand("sweep", "Bound as a function of the order, with the best order");
  sweep->add_option("joint", opt.joint_path, "Joint CSV grid")->required()->check(CLI::ExistingFile);
  sweep->add_option("event", opt.event_path, "Event 0/1 grid")->required()->check(CLI::ExistingFile);
  sweep->add_option("--alpha", opt.alpha, "Comma-separated order grid");
  sweep->add_option("--kind", opt.kind, "sibson | alpha_div");
  add_out(sweep);

  auto* verify = app.add_subcommand("verify", "Exact verification of the learning bounds on a problem");
  verify->add_option("spec", opt.spec_path, "Problem spec file")->required()->check(CLI::ExistingFile);
  verify->add_option("--alpha", opt.alpha, "Override the spec's order list");
  verify->add_option("--eta", opt.eta, "Override the spec's eta list");
  verify->add_option("--units", opt.units, "nats or bits");
  verify->add_option("--seed", opt.seed, "Override the spec's seed");
  verify->add_option("--cap", opt.cap, "Override the dataset cap");
  add_out(verify);

  auto* table = app.add_subcommand("table", "Baseline comparison table");
  table->add_option("params", opt.spec_path, "Table parameter file")->required()->check(CLI::ExistingFile);
  table->add_option("--eta", opt.eta, "Override eta");
  table->add_option("--delta", opt.delta, "Override delta");
  add_out(table);

  auto* gen = app.add_subcommand("gen-problem", "Emit a seeded random problem spec or joint grid");
  gen->add_option("--seed", opt.seed, "Seed")->required();
  gen->add_option("--kind", opt.gen_kind, "problem | joint")->check(CLI::IsMember({"problem", "joint"}));
  add_out(gen);

  CLI11_PARSE(app, argc, argv);

  try {
    const Units units = parse_units(opt.units);
    if (measure->parsed()) {
      const auto joint = read_joint_file(opt.joint_path);
      return emit(cmd_measure(joint, parse_order_list(opt.alpha), units), opt,
                  manifest_for("measure", {opt.joint_path}, units, 0));
    }
    if (bound->parsed()) {
      const auto joint = read_joint_file(opt.joint_path);
      const auto event = read_event_file(opt.event_path);
      const BoundKind kind = parse_bound_kind(opt.kind);
      const Order alpha = kind == BoundKind::kLeakage && bound->count("--alpha") == 0 ? Order::infinity()
                                                                                       : parse_order(opt.alpha);
      std::optional<Order> alpha_prime;
      if (!opt.alpha_prime.empty()) alpha_prime = parse_order(opt.alpha_prime);
      return emit(cmd_bound(joint, event, kind, alpha, alpha_prime), opt,
                  manifest_for("bound", {opt.joint_path, opt.event_path}, units, 0));
    }
    if (sweep->parsed()) {
      const auto joint = read_joint_file(opt.joint_path);
      const auto event = read_event_file(opt.event_path);
      const BoundKind kind = opt.kind.empty() ? BoundKind::kSibson : parse_bound_kind(opt.kind);
      return emit(cmd_sweep(joint, event, parse_order_list(opt.alpha), kind), opt,
                  manifest_for("sweep", {opt.joint_path, opt.event_path}, units, 0));
    }
    if (verify->parsed()) {
      ProblemSpec spec = read_problem_file(opt.spec_path);
      if (verify->count("--alpha")) spec.alphas = parse_order_list(opt.alpha);
      if (!opt.eta.empty()) spec.etas = parse_real_list(opt.eta);
      if (opt.seed) spec.seed = *opt.seed;
      if (opt.cap) spec.cap = *opt.cap;
      return emit(cmd_verify(spec, units), opt, manifest_for("verify", {opt.spec_path}, units, spec.seed));
    }
    if (table->parsed()) {
      TableParams params = read_table_file(opt.spec_path);
      if (!opt.eta.empty()) params.eta = std::stod(opt.eta);
      if (opt.delta) params.delta = *opt.delta;
      return emit(cmd_table(params), opt, manifest_for("table", {opt.spec_path}, units, 0));
    }
    if (gen->parsed()) {
      const auto kind = opt.gen_kind == "joint" ? GeneratedKind::kJoint : GeneratedKind::kProblem;
      CommandResult result{generate_instance(*opt.seed, kind), "", kExitOk};
      return emit(result, opt, manifest_for("gen-problem", {}, units, *opt.seed));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
