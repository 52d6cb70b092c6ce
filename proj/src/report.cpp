#include "minimax/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace minimax {

Json Report::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["subcommand"] = subcommand;
  j["inputs_digest"] = inputs_digest;
  j["results"] = results;
  j["warnings"] = warnings;
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf, 16);
}

std::string digest_files(const std::vector<std::string>& paths) {
  std::string combined;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    combined += path;
    combined += '\0';
    combined += ss.str();
    combined += '\0';
  }
  return fnv1a64_hex(combined);
}

namespace {

// nlohmann serializes non-finite doubles as null; make the census-case
// sentinel explicit instead of relying on that.
Json finite_or_null(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

}  // namespace

Json solution_to_json(const DesignSolution& solution, const std::vector<std::string>& ids) {
  Json j;
  j["pi_star"] = solution.pi_star;
  j["c"] = finite_or_null(solution.c);
  j["lambda"] = solution.lambda;
  j["v_n"] = solution.v_n;
  j["budget"] = solution.budget;
  Json capped = Json::array();
  for (const int i : solution.capped) capped.push_back(ids[static_cast<std::size_t>(i)]);
  j["capped"] = capped;
  double expected = 0.0;
  for (const double p : solution.pi_star) expected += p;
  j["expected_size"] = expected;
  j["units"] = ids;
  return j;
}

Json simulation_to_json(const SimulationResult& result) {
  Json j;
  j["replicates"] = result.replicates;
  j["empirical_mean"] = result.empirical_mean;
  j["empirical_mse"] = result.empirical_mse;
  j["mean_std_error"] = result.mean_std_error;
  j["mse_std_error"] = result.mse_std_error;
  j["seed"] = result.seed;
  j["stream_base"] = result.stream_base;
  j["true_total"] = result.true_total;
  return j;
}

Json comparison_to_json(const StrategyComparison& comparison) {
  Json rows = Json::array();
  for (const auto& row : comparison.rows) {
    Json r;
    r["strategy"] = row.strategy;
    r["estimator"] = row.estimator;
    r["y_index"] = row.y_index;
    r["exact_risk"] = row.exact_risk;
    r["simulation"] = simulation_to_json(row.result);
    rows.push_back(std::move(r));
  }
  Json worst = Json::object();
  for (std::size_t a = 0; a < comparison.strategies.size(); ++a) {
    worst[comparison.strategies[a]] = comparison.worst_case_mse[a];
  }
  Json j;
  j["rows"] = rows;
  j["worst_case_mse"] = worst;
  j["srswor_sample_size"] = comparison.srswor_sample_size;
  j["srswor_rounded"] = comparison.srswor_rounded;
  j["minimax_worst_case_smallest"] = comparison.minimax_worst_case_smallest;
  return j;
}

Json sharpness_to_json(const SharpnessVerdict& verdict) {
  Json j;
  j["d_pi"] = verdict.d_pi;
  j["sup_vertex_risk"] = verdict.sup_vertex_risk;
  j["mean_vertex_risk"] = verdict.mean_vertex_risk;
  j["delta_max"] = verdict.delta_max;
  j["walsh_residual_max"] = verdict.walsh_residual_max;
  j["tol"] = verdict.tol;
  j["attains"] = verdict.attains;
  j["pairwise_independent"] = verdict.pairwise_independent;
  j["equivalence_holds"] = verdict.equivalence_holds;
  return j;
}

InclusionProbabilities pi_from_design_json(const Json& j, const std::vector<std::string>& ids) {
  const Json* node = &j;
  if (j.is_object() && j.contains("results")) node = &j.at("results");
  if (!node->is_object() || !node->contains("pi_star")) {
    throw ParseError("design JSON has no pi_star field");
  }
  InclusionProbabilities pi = node->at("pi_star").get<InclusionProbabilities>();
  if (pi.size() != ids.size()) {
    throw DimensionMismatch("design JSON pi_star length differs from population size");
  }
  if (node->contains("units")) {
    const auto units = node->at("units").get<std::vector<std::string>>();
    if (units != ids) throw ParseError("design JSON unit ids do not match the bounds file");
  }
  validate_inclusion_probabilities(pi);
  return pi;
}

Design enumerated_design_from_json(const Json& j, int n_units) {
  if (!j.is_array()) throw ParseError("enumerated design file must be a JSON array");
  std::vector<std::vector<int>> subsets;
  std::vector<double> probs;
  subsets.reserve(j.size());
  probs.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("subset") || !entry.contains("p")) {
      throw ParseError("enumerated design entries need fields subset and p");
    }
    std::vector<int> subset;
    for (const auto& raw : entry.at("subset")) {
      const auto one_based = raw.get<long>();
      if (one_based < 1 || one_based > n_units) {
        throw IndexOutOfRange(one_based, static_cast<std::size_t>(n_units));
      }
      subset.push_back(static_cast<int>(one_based - 1));
    }
    subsets.push_back(std::move(subset));
    probs.push_back(entry.at("p").get<double>());
  }
  return Design::enumerated(n_units, std::move(subsets), std::move(probs));
}

Design read_enumerated_design_file(const std::string& path, int n_units) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
  return enumerated_design_from_json(j, n_units);
}

}  // namespace minimax
