// minimax_sampler: design and evaluate sampling strategies for
// finite-population totals with per-unit bounded outcomes.
//
// Subcommands:
//   design    water-fill inclusion probabilities under an expected-size budget
//   estimate  midpoint-differenced (or plain/differenced) HT estimate
//   audit     inclusion probabilities, Delta matrix, sharpness verdict
//   oracle    audit plus Walsh recovery and Bayes-risk checks
//   simulate  seeded Monte-Carlo for one strategy or a comparison table
//
// Exit codes: 0 success, 1 validation error, 2 internal error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minimax/allocator.hpp"
#include "minimax/csv.hpp"
#include "minimax/design.hpp"
#include "minimax/estimators.hpp"
#include "minimax/mc.hpp"
#include "minimax/oracle.hpp"
#include "minimax/population.hpp"
#include "minimax/report.hpp"
#include "minimax/rng.hpp"

namespace {

using namespace minimax;

struct Diagnostic {
  std::string severity;  // "error" | "warning"
  std::string message;
};

struct LoadedBounds {
  PopulationBounds bounds;          // after optional stripping
  PopulationBounds original;        // as ingested
  BoundsCsv csv;                    // raw file contents
  std::vector<int> active_to_original;
  std::vector<std::string> removed_ids;
  double midpoint_offset = 0.0;     // total of stripped midpoints
  bool stripped = false;
};

LoadedBounds load_bounds_file(const std::string& path, bool strip, bool require_positive,
                              std::vector<Diagnostic>& diagnostics) {
  LoadedBounds out;
  out.csv = read_bounds_csv_file(path);
  out.original = PopulationBounds::load_bounds(out.csv.records);
  out.bounds = out.original;
  for (int i = 0; i < out.original.units(); ++i) {
    out.active_to_original.push_back(i);
  }
  bool has_degenerate = false;
  for (int i = 0; i < out.original.units(); ++i) {
    if (!(out.original.radii()[static_cast<std::size_t>(i)] > 0.0)) has_degenerate = true;
  }
  if (has_degenerate && strip) {
    StripResult stripped = strip_degenerate(out.original);
    for (const auto& id : stripped.removed_ids) {
      diagnostics.push_back({"warning", "unit '" + id + "' has zero radius; stripped, midpoint " +
                                            "carried as an additive constant"});
    }
    out.bounds = std::move(stripped.active);
    out.active_to_original = std::move(stripped.active_to_original);
    out.removed_ids = std::move(stripped.removed_ids);
    out.midpoint_offset = stripped.removed_midpoint_total;
    out.stripped = true;
  } else if (has_degenerate && require_positive) {
    for (int i = 0; i < out.original.units(); ++i) {
      if (!(out.original.radii()[static_cast<std::size_t>(i)] > 0.0)) {
        diagnostics.push_back({"error", "unit '" + out.original.ids()[static_cast<std::size_t>(i)] +
                                            "' has zero radius (use --strip-degenerate)"});
      }
    }
  }
  return out;
}

int fail_validation(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << d.severity << ": " << d.message << "\n";
  return 1;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == "error") return true;
  }
  return false;
}

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + output_path + "'");
  out << text;
}

void emit(const Report& report, const std::string& output_path) {
  emit_text(report.dump(), output_path);
}

// CSV rendering for the tabular subcommands; the envelope fields ride
// along as comment lines so the file stays self-describing.
std::string csv_preamble(const Report& report) {
  std::string text;
  text += "# schema_version: " + report.schema_version + "\n";
  text += "# subcommand: " + report.subcommand + "\n";
  text += "# inputs_digest: " + report.inputs_digest + "\n";
  for (const auto& w : report.warnings) text += "# warning: " + w + "\n";
  return text;
}

std::vector<std::string> warnings_of(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) {
    if (d.severity == "warning") out.push_back(d.message);
  }
  return out;
}

// ---------------------------------------------------------------------------
// design

struct DesignArgs {
  std::string bounds_path;
  double budget = 0.0;
  bool strip = false;
  std::string format = "json";
  std::string output = "-";
};

int run_design(const DesignArgs& args) {
  std::vector<Diagnostic> diagnostics;
  LoadedBounds loaded = load_bounds_file(args.bounds_path, args.strip, true, diagnostics);
  if (!(args.budget > 0.0) || args.budget > loaded.bounds.units()) {
    diagnostics.push_back({"error", "budget " + format_double(args.budget) + " outside (0, " +
                                        std::to_string(loaded.bounds.units()) + "]"});
  }
  if (has_errors(diagnostics)) return fail_validation(diagnostics);

  const DesignSolution solution = solve_waterfill(loaded.bounds.radii(), args.budget);

  Report report;
  report.subcommand = "design";
  report.inputs_digest = digest_files({args.bounds_path});
  report.results = solution_to_json(solution, loaded.bounds.ids());
  if (loaded.stripped) {
    report.results["stripped_units"] = loaded.removed_ids;
    report.results["midpoint_offset"] = loaded.midpoint_offset;
  }
  report.warnings = warnings_of(diagnostics);
  if (args.format == "csv") {
    std::string text = csv_preamble(report);
    text += "# c: " + (std::isfinite(solution.c) ? format_double(solution.c) : "inf") + "\n";
    text += "# lambda: " + format_double(solution.lambda) + "\n";
    text += "# v_n: " + format_double(solution.v_n) + "\n";
    text += "# budget: " + format_double(solution.budget) + "\n";
    text += "id,pi_star\n";
    for (int i = 0; i < loaded.bounds.units(); ++i) {
      text += loaded.bounds.ids()[static_cast<std::size_t>(i)] + "," +
              format_double(solution.pi_star[static_cast<std::size_t>(i)]) + "\n";
    }
    emit_text(text, args.output);
  } else {
    emit(report, args.output);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
  std::string bounds_path;
  std::string pi_from;   // design report JSON
  std::string pi_csv;    // id,pi
  std::string sample_path;
  std::string centers_path;
  std::string estimator = "midpoint";
  bool strip = false;
  std::string output = "-";
};

std::vector<std::string> read_id_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    const std::string id = line.substr(b, e - b + 1);
    if (id.empty() || id[0] == '#') continue;
    ids.push_back(id);
  }
  return ids;
}

int run_estimate(const EstimateArgs& args) {
  std::vector<Diagnostic> diagnostics;
  LoadedBounds loaded = load_bounds_file(args.bounds_path, args.strip, false, diagnostics);
  const PopulationBounds& bounds = loaded.bounds;
  std::vector<std::string> inputs = {args.bounds_path};

  InclusionProbabilities pi;
  if (!args.pi_from.empty()) {
    std::ifstream in(args.pi_from);
    if (!in) throw FileError("cannot open '" + args.pi_from + "'");
    Json j;
    in >> j;
    pi = pi_from_design_json(j, bounds.ids());
    inputs.push_back(args.pi_from);
  } else if (!args.pi_csv.empty()) {
    pi = align_to_units(bounds, read_keyed_csv_file(args.pi_csv, "pi"), "pi file");
    validate_inclusion_probabilities(pi);
    inputs.push_back(args.pi_csv);
  } else {
    diagnostics.push_back({"error", "one of --pi-from or --pi is required"});
    return fail_validation(diagnostics);
  }

  // Sample membership: --sample file wins; else the s column; else the
  // rows that carry an observed value.
  std::set<int> member_original;  // indices into the original file order
  if (!args.sample_path.empty()) {
    inputs.push_back(args.sample_path);
    for (const auto& id : read_id_lines(args.sample_path)) {
      bool found = false;
      for (int i = 0; i < loaded.original.units(); ++i) {
        if (loaded.original.ids()[static_cast<std::size_t>(i)] == id) {
          member_original.insert(i);
          found = true;
          break;
        }
      }
      if (!found) diagnostics.push_back({"error", "sample file names unknown unit '" + id + "'"});
    }
  } else if (loaded.csv.has_membership) {
    for (std::size_t i = 0; i < loaded.csv.membership.size(); ++i) {
      if (loaded.csv.membership[i].value_or(0) == 1) member_original.insert(static_cast<int>(i));
    }
  } else if (loaded.csv.has_y) {
    for (std::size_t i = 0; i < loaded.csv.y.size(); ++i) {
      if (loaded.csv.y[i].has_value()) member_original.insert(static_cast<int>(i));
    }
  } else {
    diagnostics.push_back({"error", "no sample: provide --sample, an s column, or a y column"});
    return fail_validation(diagnostics);
  }

  Sample sample;
  const double tau = loaded.original.default_tolerance();
  for (int active = 0; active < bounds.units(); ++active) {
    const int orig = loaded.active_to_original[static_cast<std::size_t>(active)];
    if (member_original.count(orig) == 0) continue;
    const auto& id = bounds.ids()[static_cast<std::size_t>(active)];
    const auto& y_cell = loaded.csv.y[static_cast<std::size_t>(orig)];
    if (!loaded.csv.has_y || !y_cell.has_value()) {
      diagnostics.push_back({"error", "sampled unit '" + id + "' has no observed value"});
      continue;
    }
    const double y = *y_cell;
    if (y < bounds.lower()[static_cast<std::size_t>(active)] - tau ||
        y > bounds.upper()[static_cast<std::size_t>(active)] + tau) {
      diagnostics.push_back(
          {"warning", "unit '" + id + "': observed value " + format_double(y) +
                          " is outside its interval"});
    }
    sample.indices.push_back(active);
    sample.values.push_back(y);
  }
  if (has_errors(diagnostics)) return fail_validation(diagnostics);
  if (sample.indices.empty()) diagnostics.push_back({"warning", "empty sample"});

  Estimator estimator = Estimator::midpoint_ht(bounds, pi);
  if (args.estimator == "plain") {
    estimator = Estimator::plain_ht(bounds.units(), pi);
  } else if (args.estimator == "differenced") {
    if (args.centers_path.empty()) {
      diagnostics.push_back({"error", "--estimator differenced requires --centers"});
      return fail_validation(diagnostics);
    }
    inputs.push_back(args.centers_path);
    auto centers = align_to_units(bounds, read_keyed_csv_file(args.centers_path, "w"), "centers");
    if (!contains(bounds, centers, 0.0)) {
      diagnostics.push_back({"warning", "centers lie outside the bounds rectangle"});
    }
    estimator = Estimator::differenced_ht(std::move(centers), pi);
  } else if (args.estimator != "midpoint") {
    diagnostics.push_back({"error", "unknown estimator '" + args.estimator + "'"});
    return fail_validation(diagnostics);
  }

  const double estimate = loaded.midpoint_offset + estimator(sample);
  const bool in_range = estimate_in_range(loaded.original, estimate);
  if (!in_range) {
    diagnostics.push_back({"warning", "estimate leaves the attainable range (not clamped)"});
  }

  Report report;
  report.subcommand = "estimate";
  report.inputs_digest = digest_files(inputs);
  report.results["estimate"] = estimate;
  report.results["midpoint_total"] = loaded.original.midpoint_total();
  report.results["in_range"] = in_range;
  report.results["estimator"] = estimator.name();
  report.results["sample_size"] = sample.indices.size();
  report.results["pi"] = pi;
  if (loaded.stripped) {
    report.results["stripped_units"] = loaded.removed_ids;
    report.results["midpoint_offset"] = loaded.midpoint_offset;
  }
  report.warnings = warnings_of(diagnostics);
  emit(report, args.output);
  return 0;
}

// ---------------------------------------------------------------------------
// audit / oracle

struct AuditArgs {
  std::string bounds_path;
  std::string design_kind;  // srswor | poisson | enumerated
  int size = 0;             // srswor sample size
  int of = 0;               // optional srswor population size (checked)
  std::string pi_csv;
  double budget = 0.0;
  std::string design_file;
  double tol = 0.0;  // 0 means the 1e-9 * max(1, D_pi) default
  bool strip = false;
  std::string output = "-";
};

Design design_from_args(const AuditArgs& args, const PopulationBounds& bounds,
                        std::vector<std::string>& inputs) {
  const int n = bounds.units();
  if (args.design_kind == "srswor") {
    if (args.of != 0 && args.of != n) {
      throw BudgetOutOfRange("--of " + std::to_string(args.of) + " differs from the " +
                             std::to_string(n) + " bounded units");
    }
    return Design::srswor(n, args.size);
  }
  if (args.design_kind == "poisson") {
    if (!args.pi_csv.empty()) {
      inputs.push_back(args.pi_csv);
      auto pi = align_to_units(bounds, read_keyed_csv_file(args.pi_csv, "pi"), "pi file");
      return Design::poisson(std::move(pi));
    }
    if (args.budget > 0.0) {
      return Design::poisson(solve_waterfill(bounds.radii(), args.budget).pi_star);
    }
    throw BudgetOutOfRange("poisson design needs --pi or --budget");
  }
  if (args.design_kind == "enumerated") {
    if (args.design_file.empty()) throw FileError("enumerated design needs --file");
    inputs.push_back(args.design_file);
    return read_enumerated_design_file(args.design_file, n);
  }
  throw ParseError("unknown design kind '" + args.design_kind + "'");
}

Json design_audit_json(const Design& design) {
  const SecondOrderMatrix second = design.second_order();
  const int n = design.units();
  Json pi2 = Json::array();
  for (int i = 0; i < n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < n; ++j) row.push_back(second.joint(i, j));
    pi2.push_back(std::move(row));
  }
  Json j;
  j["pi"] = design.first_order();
  j["pi2"] = pi2;
  j["delta_max_offdiag"] = second.max_offdiag_delta();
  j["expected_size"] = design.expected_size();
  j["pairwise_independent"] = design.pairwise_independent(1e-12);
  return j;
}

int run_audit(const AuditArgs& args, bool full_oracle) {
  std::vector<Diagnostic> diagnostics;
  LoadedBounds loaded = load_bounds_file(args.bounds_path, args.strip, true, diagnostics);
  if (has_errors(diagnostics)) return fail_validation(diagnostics);
  std::vector<std::string> inputs = {args.bounds_path};
  const Design design = design_from_args(args, loaded.bounds, inputs);

  const double d = d_pi(loaded.bounds.radii(), design.first_order());
  const double tol = args.tol > 0.0 ? args.tol : 1e-9 * std::max(1.0, d);
  const SharpnessVerdict verdict = sharpness_audit(design, loaded.bounds, tol);

  Report report;
  report.subcommand = full_oracle ? "oracle" : "audit";
  report.inputs_digest = digest_files(inputs);
  report.results["design"] = design_audit_json(design);
  report.results["sharpness"] = sharpness_to_json(verdict);

  if (full_oracle) {
    const InclusionProbabilities& pi = design.first_order();
    const Estimator midpoint = Estimator::midpoint_ht(loaded.bounds, pi);
    const VertexRiskProfile profile = vertex_risk_profile(design, midpoint, loaded.bounds);
    const WalshCoefficients walsh = walsh_delta_recovery(profile, pi, loaded.bounds.radii());

    Json pairs = Json::array();
    for (int i = 0; i < loaded.bounds.units(); ++i) {
      for (int j = i + 1; j < loaded.bounds.units(); ++j) {
        Json entry;
        entry["i"] = i + 1;
        entry["j"] = j + 1;
        entry["coefficient"] = walsh.pair_coefficient(i, j);
        entry["implied_delta"] = walsh.implied_delta(i, j);
        pairs.push_back(std::move(entry));
      }
    }
    Json walsh_json;
    walsh_json["constant_term"] = walsh.constant;
    walsh_json["pairs"] = pairs;
    walsh_json["residual_max"] = walsh.residual_max;
    report.results["walsh"] = walsh_json;

    const ProductPrior prior = ProductPrior::vertex(loaded.bounds);
    double predicted = 0.0;
    for (int i = 0; i < loaded.bounds.units(); ++i) {
      predicted += prior.variance(i) * (1.0 / pi[static_cast<std::size_t>(i)] - 1.0);
    }
    const double bayes = product_prior_bayes_risk(design, midpoint, prior);
    const BayesDominance plain =
        bayes_dominance_audit(design, prior, Estimator::plain_ht(loaded.bounds.units(), pi), tol);

    Json bayes_json;
    bayes_json["midpoint_bayes_risk"] = bayes;
    bayes_json["predicted"] = predicted;
    bayes_json["identity_abs_error"] = std::abs(bayes - predicted);
    bayes_json["plain_ht_bayes_risk"] = plain.challenger_bayes_risk;
    bayes_json["plain_ht_dominated"] = plain.challenger_at_least;
    report.results["bayes"] = bayes_json;
  }

  report.warnings = warnings_of(diagnostics);
  emit(report, args.output);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string bounds_path;
  std::string y_file;
  double budget = 0.0;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 1;
  std::string strategy = "compare";
  bool strip = false;
  std::string format = "json";
  std::string output = "-";
};

std::string simulation_csv_row(const std::string& strategy, const std::string& estimator,
                               std::size_t y_index, double exact_risk,
                               const SimulationResult& r) {
  std::string row = strategy + "," + estimator + "," + std::to_string(y_index) + "," +
                    format_double(exact_risk) + "," + std::to_string(r.replicates) + "," +
                    format_double(r.empirical_mean) + "," + format_double(r.empirical_mse) + "," +
                    format_double(r.mean_std_error) + "," + format_double(r.mse_std_error);
  return row + "\n";
}

constexpr const char* kSimulationCsvHeader =
    "strategy,estimator,y_index,exact_risk,replicates,empirical_mean,empirical_mse,"
    "mean_std_error,mse_std_error\n";

int run_simulate(const SimulateArgs& args) {
  std::vector<Diagnostic> diagnostics;
  LoadedBounds loaded = load_bounds_file(args.bounds_path, args.strip, true, diagnostics);
  const PopulationBounds& bounds = loaded.bounds;
  std::vector<std::string> inputs = {args.bounds_path};

  OutcomeVector y;
  if (!args.y_file.empty()) {
    inputs.push_back(args.y_file);
    OutcomeVector full =
        align_to_units(loaded.original, read_keyed_csv_file(args.y_file, "y"), "y file");
    for (const int orig : loaded.active_to_original) {
      y.push_back(full[static_cast<std::size_t>(orig)]);
    }
  } else if (loaded.csv.has_y) {
    for (const int orig : loaded.active_to_original) {
      const auto& cell = loaded.csv.y[static_cast<std::size_t>(orig)];
      if (!cell.has_value()) {
        diagnostics.push_back(
            {"error", "unit '" + loaded.original.ids()[static_cast<std::size_t>(orig)] +
                          "' has no y value; simulation needs the full outcome vector"});
      } else {
        y.push_back(*cell);
      }
    }
  } else {
    diagnostics.push_back({"error", "simulate needs --y-file or a complete y column"});
  }
  if (!(args.budget > 0.0) || args.budget > bounds.units()) {
    diagnostics.push_back({"error", "budget " + format_double(args.budget) + " outside (0, " +
                                        std::to_string(bounds.units()) + "]"});
  }
  if (args.reps < 2) diagnostics.push_back({"error", "--reps must be at least 2"});
  if (has_errors(diagnostics)) return fail_validation(diagnostics);

  if (!contains(bounds, y, bounds.default_tolerance())) {
    diagnostics.push_back({"warning", "outcome vector leaves the bounds rectangle"});
  }

  Report report;
  report.subcommand = "simulate";
  report.inputs_digest = digest_files(inputs);
  report.results["strategy"] = args.strategy;
  report.results["budget"] = args.budget;
  std::string csv_rows;

  if (args.strategy == "compare") {
    const StrategyComparison comparison =
        compare_strategies(bounds, args.budget, {y}, args.reps, args.seed);
    report.results["comparison"] = comparison_to_json(comparison);
    for (const auto& row : comparison.rows) {
      csv_rows += simulation_csv_row(row.strategy, row.estimator, row.y_index, row.exact_risk,
                                     row.result);
    }
  } else {
    const DesignSolution solution = solve_waterfill(bounds.radii(), args.budget);
    Design design = Design::poisson(solution.pi_star);
    Estimator estimator = Estimator::midpoint_ht(bounds, solution.pi_star);
    if (args.strategy == "uniform") {
      const InclusionProbabilities uniform_pi(static_cast<std::size_t>(bounds.units()),
                                              args.budget / bounds.units());
      design = Design::poisson(uniform_pi);
      estimator = Estimator::midpoint_ht(bounds, uniform_pi);
    } else if (args.strategy == "srswor") {
      const int k = static_cast<int>(std::llround(args.budget));
      if (k < 1 || k > bounds.units()) {
        diagnostics.push_back({"error", "srswor strategy needs round(budget) in 1..N"});
        return fail_validation(diagnostics);
      }
      design = Design::srswor(bounds.units(), k);
      estimator = Estimator::midpoint_ht(bounds, design.first_order());
    } else if (args.strategy == "plain-ht") {
      estimator = Estimator::plain_ht(bounds.units(), solution.pi_star);
    } else if (args.strategy != "minimax") {
      diagnostics.push_back({"error", "unknown strategy '" + args.strategy + "'"});
      return fail_validation(diagnostics);
    }
    const SimulationResult result = simulate(design, estimator, y, args.reps, args.seed);
    const double exact =
        exact_risk_difference(estimator.centers(), estimator.pi(), design.second_order(), y);
    report.results["simulation"] = simulation_to_json(result);
    report.results["exact_risk"] = exact;
    csv_rows = simulation_csv_row(args.strategy, estimator.name(), 0, exact, result);
  }

  report.warnings = warnings_of(diagnostics);
  if (args.format == "csv") {
    emit_text(csv_preamble(report) + kSimulationCsvHeader + csv_rows, args.output);
  } else {
    emit(report, args.output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimax design and estimation for bounded finite populations"};
  app.require_subcommand(1);

  DesignArgs design_args;
  auto* design_cmd = app.add_subcommand("design", "solve the water-fill design problem");
  design_cmd->add_option("--bounds", design_args.bounds_path, "bounds CSV (id,a,b)")->required();
  design_cmd->add_option("--budget", design_args.budget, "expected sample size n")->required();
  design_cmd->add_flag("--strip-degenerate", design_args.strip, "drop zero-radius units");
  design_cmd->add_option("--format", design_args.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  design_cmd->add_option("--output", design_args.output, "output path (default stdout)");

  EstimateArgs estimate_args;
  auto* estimate_cmd = app.add_subcommand("estimate", "estimate the population total");
  estimate_cmd->add_option("--bounds", estimate_args.bounds_path, "bounds CSV (id,a,b[,y][,s])")
      ->required();
  auto* pi_from_opt = estimate_cmd->add_option("--pi-from", estimate_args.pi_from,
                                               "design report JSON");
  estimate_cmd->add_option("--pi", estimate_args.pi_csv, "inclusion probabilities CSV (id,pi)")
      ->excludes(pi_from_opt);
  estimate_cmd->add_option("--sample", estimate_args.sample_path, "sampled unit ids, one per line");
  estimate_cmd->add_option("--estimator", estimate_args.estimator,
                           "midpoint | plain | differenced");
  estimate_cmd->add_option("--centers", estimate_args.centers_path, "centers CSV (id,w)");
  estimate_cmd->add_flag("--strip-degenerate", estimate_args.strip, "drop zero-radius units");
  estimate_cmd->add_option("--output", estimate_args.output, "output path (default stdout)");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "design audit and sharpness verdict");
  AuditArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "full brute-force certification");
  for (auto [cmd, args] : {std::pair{audit_cmd, &audit_args}, std::pair{oracle_cmd, &oracle_args}}) {
    cmd->add_option("--bounds", args->bounds_path, "bounds CSV (id,a,b)")->required();
    cmd->add_option("--design", args->design_kind, "srswor | poisson | enumerated")->required();
    cmd->add_option("--size", args->size, "SRSWOR sample size k");
    cmd->add_option("--of", args->of, "SRSWOR population size (must match the bounds)");
    cmd->add_option("--pi", args->pi_csv, "Poisson probabilities CSV (id,pi)");
    cmd->add_option("--budget", args->budget, "derive Poisson probabilities by water-fill");
    cmd->add_option("--file", args->design_file, "enumerated design JSON");
    cmd->add_option("--tol", args->tol, "verdict tolerance (default 1e-9 * max(1, D_pi))");
    cmd->add_flag("--strip-degenerate", args->strip, "drop zero-radius units");
    cmd->add_option("--output", args->output, "output path (default stdout)");
  }

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "seeded Monte-Carlo study");
  simulate_cmd->add_option("--bounds", simulate_args.bounds_path, "bounds CSV (id,a,b[,y])")
      ->required();
  simulate_cmd->add_option("--y-file", simulate_args.y_file, "outcome CSV (id,y)");
  simulate_cmd->add_option("--budget", simulate_args.budget, "expected sample size n")->required();
  simulate_cmd->add_option("--reps", simulate_args.reps, "replicates (default 100000)");
  simulate_cmd->add_option("--seed", simulate_args.seed, "RNG seed (default 1)");
  simulate_cmd->add_option("--strategy", simulate_args.strategy,
                           "minimax | uniform | srswor | plain-ht | compare");
  simulate_cmd->add_flag("--strip-degenerate", simulate_args.strip, "drop zero-radius units");
  simulate_cmd->add_option("--format", simulate_args.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate_cmd->add_option("--output", simulate_args.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are validation errors; --help is success
  }

  try {
    if (design_cmd->parsed()) return run_design(design_args);
    if (estimate_cmd->parsed()) return run_estimate(estimate_args);
    if (audit_cmd->parsed()) return run_audit(audit_args, false);
    if (oracle_cmd->parsed()) return run_audit(oracle_args, true);
    if (simulate_cmd->parsed()) return run_simulate(simulate_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
