#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "minimax/allocator.hpp"
#include "minimax/mc.hpp"
#include "minimax/oracle.hpp"
#include "minimax/population.hpp"

namespace minimax {

using Json = nlohmann::json;  // std::map-backed, so object keys serialize sorted

/// Machine-readable report envelope shared by all subcommands. Serialized
/// with sorted keys and shortest round-trip floats, so identical inputs and
/// seeds produce byte-identical files.
struct Report {
  std::string schema_version = "1";
  std::string subcommand;
  std::string inputs_digest;
  Json results = Json::object();
  std::vector<std::string> warnings;

  Json to_json() const;
  std::string dump() const;  // pretty, trailing newline
};

/// FNV-1a 64-bit over the raw bytes, as a 16-digit hex string.
std::string fnv1a64_hex(const std::string& bytes);

/// Content digest of the named files, in order. Stable across reruns of
/// identical inputs.
std::string digest_files(const std::vector<std::string>& paths);

Json solution_to_json(const DesignSolution& solution, const std::vector<std::string>& ids);
Json simulation_to_json(const SimulationResult& result);
Json comparison_to_json(const StrategyComparison& comparison);
Json sharpness_to_json(const SharpnessVerdict& verdict);

/// Inclusion probabilities from a `design` report (or bare solution
/// object): reads pi_star and, when present, checks unit ids against the
/// expected order.
InclusionProbabilities pi_from_design_json(const Json& j, const std::vector<std::string>& ids);

/// Enumerated design file: JSON array of {"subset": [1-based indices],
/// "p": probability}.
Design enumerated_design_from_json(const Json& j, int n_units);
Design read_enumerated_design_file(const std::string& path, int n_units);

}  // namespace minimax
