#pragma once

// Subcommand bodies. Each returns the CSV it would print plus stderr notes
// and an exit code; the executable only wires flags and files to these.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alphaleak/bounds.hpp"
#include "alphaleak/distribution.hpp"
#include "alphaleak/format.hpp"
#include "alphaleak/learning.hpp"
#include "alphaleak/order.hpp"
#include "alphaleak/problem_spec.hpp"

namespace alphaleak::cli {

extern const char* const kToolVersion;

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  std::string csv;
  std::string diagnostics;
  int exit_code = kExitOk;
};

struct RunManifest {
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string command;
  std::vector<std::pair<std::string, std::string>> input_digests;  // (path, sha256)
  Units units = Units::kNats;

  nlohmann::json to_json() const;
};

// Rows: renyi_divergence and sibson_mi per order, then maximal_leakage and
// mutual_information.
CommandResult cmd_measure(const JointDistribution& joint, const std::vector<Order>& alphas, Units units);

// alpha_prime is required for theorem1 and ignored otherwise; leakage ignores alpha.
CommandResult cmd_bound(const JointDistribution& joint, const Event& event, BoundKind kind, Order alpha,
                        std::optional<Order> alpha_prime);

CommandResult cmd_sweep(const JointDistribution& joint, const Event& event, const std::vector<Order>& grid,
                        BoundKind kind);

// One row per (eta, order, bound kind); exit code 0 iff every row holds.
CommandResult cmd_verify(const ProblemSpec& spec, Units units);

CommandResult cmd_table(const TableParams& params);

enum class GeneratedKind { kProblem, kJoint };
// Same seed, same bytes.
std::string generate_instance(std::uint64_t seed, GeneratedKind kind);

}  // namespace alphaleak::cli
