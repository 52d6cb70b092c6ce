// Acceptance suite: exercises the toolkit's certification criteria end to
// end and prints one PASS/FAIL line per criterion. Exit code is the number
// of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "minimax/allocator.hpp"
#include "minimax/csv.hpp"
#include "minimax/design.hpp"
#include "minimax/estimators.hpp"
#include "minimax/mc.hpp"
#include "minimax/oracle.hpp"
#include "minimax/parallel.hpp"
#include "minimax/population.hpp"
#include "minimax/rng.hpp"
#include "test_support.hpp"

using namespace minimax;

namespace {

struct Instance {
  PopulationBounds bounds;
  Design design;
  std::string label;
};

// Deterministic instance suite shared by the certification criteria:
// population sizes 2..6, radii in [0.2, 2], inclusion probabilities kept
// away from zero so absolute 1e-9 checks are meaningful against
// double-precision round-off. Both pairwise-independent designs (expanded
// Poisson) and dependent ones (SRSWOR, random enumerated) are present.
std::vector<Instance> build_suite(int count) {
  std::vector<Instance> suite;
  StreamRng rng(20250810, 0);
  for (int k = 0; k < count; ++k) {
    const int n = 2 + k % 5;
    PopulationBounds bounds = testsupport::random_bounds(rng, n, 0.2, 2.0);
    switch (k % 4) {
      case 0:
        suite.push_back(
            {bounds, testsupport::random_enumerated_design(rng, n, true, 0.15), "dense"});
        break;
      case 1:
        suite.push_back(
            {bounds, testsupport::random_enumerated_design(rng, n, false, 0.15), "sparse"});
        break;
      case 2: {
        const auto pi = testsupport::random_pi(rng, n, 0.2, 1.0);
        suite.push_back({bounds, Design::poisson(pi).enumerated_form(), "poisson"});
        break;
      }
      default:
        suite.push_back(
            {bounds, Design::srswor(n, 1 + static_cast<int>(rng.next_below(n))), "srswor"});
        break;
    }
  }
  return suite;
}

struct Criterion {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    passed = false;
    if (detail.empty()) detail = why;
  }
};

void report(int index, const std::string& name, const Criterion& c) {
  std::printf("[%d/8] %s  %s%s%s\n", index, c.passed ? "PASS" : "FAIL", name.c_str(),
              c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
}

std::string format_margin(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

// --------------------------------------------------------------------------
// Criteria 1-3 walk the shared instance suite.

Criterion criterion_lower_bound(const std::vector<Instance>& suite) {
  Criterion c;
  StreamRng rng(11, 1);
  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& instance : suite) {
    const auto& pi = instance.design.first_order();
    const double bound = d_pi(instance.bounds.radii(), pi);
    std::vector<Estimator> estimators = {Estimator::midpoint_ht(instance.bounds, pi),
                                         Estimator::plain_ht(instance.bounds.units(), pi)};
    for (int k = 0; k < 10; ++k) {
      estimators.push_back(
          Estimator::differenced_ht(testsupport::random_point_in(rng, instance.bounds), pi));
    }
    for (const auto& estimator : estimators) {
      const VertexRiskProfile profile =
          vertex_risk_profile(instance.design, estimator, instance.bounds);
      min_margin = std::min(min_margin, profile.mean - bound);
      if (profile.mean < bound - 1e-9) {
        c.fail(instance.label + ": mean vertex risk " + std::to_string(profile.mean) +
               " under D_pi " + std::to_string(bound) + " for " + estimator.name());
      }
    }
  }
  if (c.passed) {
    c.detail = std::to_string(suite.size()) + " instances x 12 estimators, min(mean - D_pi) = " +
               format_margin(min_margin);
  }
  return c;
}

Criterion criterion_sharpness(const std::vector<Instance>& suite) {
  Criterion c;
  int attained = 0;
  for (const auto& instance : suite) {
    const SharpnessVerdict v = sharpness_audit(instance.design, instance.bounds, 1e-9);
    if (!v.equivalence_holds) {
      c.fail(instance.label + ": attains=" + (v.attains ? "true" : "false") + " but delta_max=" +
             std::to_string(v.delta_max));
    }
    if (v.attains) ++attained;
  }

  // pinned worked instance: SRSWOR(2,1) on [-1,1]^2
  const auto unit2 = PopulationBounds::load_bounds({{"u1", -1.0, 1.0}, {"u2", -1.0, 1.0}});
  const Design srswor21 = Design::srswor(2, 1);
  const SharpnessVerdict v = sharpness_audit(srswor21, unit2, 1e-9);
  const SecondOrderMatrix second = srswor21.second_order();
  if (std::abs(v.sup_vertex_risk - 4.0) > 1e-12) c.fail("srswor(2,1) sup != 4");
  if (std::abs(v.d_pi - 2.0) > 1e-12) c.fail("srswor(2,1) D_pi != 2");
  if (std::abs(second.delta(0, 1) + 0.25) > 1e-12) c.fail("srswor(2,1) Delta12 != -1/4");
  if (v.attains) c.fail("srswor(2,1) must not attain the bound");

  if (c.passed) {
    c.detail = "equivalence held on all " + std::to_string(suite.size()) + " instances (" +
               std::to_string(attained) + " attaining); srswor(2,1) pinned values exact";
  }
  return c;
}

Criterion criterion_walsh(const std::vector<Instance>& suite) {
  Criterion c;
  double worst = 0.0;
  for (const auto& instance : suite) {
    const auto& pi = instance.design.first_order();
    const auto& radii = instance.bounds.radii();
    const Estimator midpoint = Estimator::midpoint_ht(instance.bounds, pi);
    const VertexRiskProfile profile =
        vertex_risk_profile(instance.design, midpoint, instance.bounds);
    const WalshCoefficients walsh = walsh_delta_recovery(profile, pi, radii);
    const SecondOrderMatrix second = instance.design.second_order();
    const int n = instance.bounds.units();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        const double predicted =
            2.0 * second.delta(i, j) * radii[ui] * radii[uj] / (pi[ui] * pi[uj]);
        const double err = std::abs(walsh.pair_coefficient(i, j) - predicted);
        worst = std::max(worst, err);
        if (err > 1e-9) c.fail(instance.label + ": pair coefficient off by " + format_margin(err));
      }
    }
    const double const_err = std::abs(walsh.constant - d_pi(radii, pi));
    worst = std::max(worst, const_err);
    if (const_err > 1e-9) {
      c.fail(instance.label + ": constant term off by " + format_margin(const_err));
    }
  }
  if (c.passed) c.detail = "max reconstruction error " + format_margin(worst);
  return c;
}

Criterion criterion_waterfill() {
  Criterion c;
  StreamRng rng(44, 2);
  double worst_gap = -std::numeric_limits<double>::infinity();
  double worst_budget_residual = 0.0;
  const int instances = 100;
  for (int k = 0; k < instances; ++k) {
    const int n = 2 + k % 4;  // N in 2..5
    const auto radii = testsupport::random_radii(rng, n, 0.3, 2.5);
    const double budget = testsupport::uniform_in(rng, 0.4, n - 0.2);
    const DesignSolution s = solve_waterfill(radii, budget);
    double total_pi = 0.0;
    for (const double p : s.pi_star) total_pi += p;
    worst_budget_residual = std::max(worst_budget_residual, std::abs(total_pi - budget));
    if (std::abs(total_pi - budget) > 1e-9) c.fail("budget equation residual too large");
    const double grid_min = testsupport::grid_min_d_pi(radii, budget, 50);
    worst_gap = std::max(worst_gap, s.v_n - grid_min);
    if (s.v_n > grid_min + 1e-9) {
      c.fail("v_n " + std::to_string(s.v_n) + " above grid minimum " + std::to_string(grid_min));
    }
  }

  // pinned worked instance
  const DesignSolution s = solve_waterfill(std::vector<double>{0.5, 1.0, 1.5}, 2.0);
  if (std::abs(s.pi_star[0] - 1.0 / 3.0) > 1e-12 || std::abs(s.pi_star[1] - 2.0 / 3.0) > 1e-12 ||
      std::abs(s.pi_star[2] - 1.0) > 1e-12) {
    c.fail("worked instance pi_star off");
  }
  if (std::abs(s.v_n - 1.0) > 1e-12) c.fail("worked instance v_n != 1");

  if (c.passed) {
    c.detail = std::to_string(instances) + " instances, max v_n - grid_min = " +
               format_margin(worst_gap) + ", max budget residual = " +
               format_margin(worst_budget_residual);
  }
  return c;
}

Criterion criterion_attainment() {
  Criterion c;
  StreamRng rng(55, 3);

  // exact route at N = 12: enumerated Poisson(pi*) profile sup == V_n
  {
    const int n = 12;
    const PopulationBounds bounds = testsupport::random_bounds(rng, n, 0.3, 2.0);
    const double budget = 6.0;
    const DesignSolution s = solve_waterfill(bounds.radii(), budget);
    const Design design = Design::poisson(s.pi_star);
    const Estimator midpoint = Estimator::midpoint_ht(bounds, s.pi_star);
    const VertexRiskProfile profile = vertex_risk_profile(design, midpoint, bounds);
    const double gap = std::abs(profile.sup - s.v_n);
    if (gap > 1e-9) {
      c.fail("N=12 sup vertex risk off V_n by " + format_margin(gap));
    } else {
      c.detail = "N=12 |sup - V_n| = " + format_margin(gap);
    }
  }

  // Monte-Carlo route at N = 50
  {
    const int n = 50;
    const PopulationBounds bounds = testsupport::random_bounds(rng, n, 0.2, 2.0);
    const double budget = 12.0;
    const DesignSolution s = solve_waterfill(bounds.radii(), budget);
    const Design design = Design::poisson(s.pi_star);
    const Estimator midpoint = Estimator::midpoint_ht(bounds, s.pi_star);
    const double closed_form = s.v_n;  // same at every vertex for Poisson
    double worst_z = 0.0;
    for (int v = 0; v < 20; ++v) {
      std::uint64_t mask = 0;
      for (int i = 0; i < n; ++i) mask |= (rng.next_below(2) << i);
      const OutcomeVector y = vertex(bounds, mask);
      const SimulationResult mc = simulate(design, midpoint, y, 1000000, 8100 + v);
      const double z = std::abs(mc.empirical_mse - closed_form) / mc.mse_std_error;
      worst_z = std::max(worst_z, z);
      if (z > 4.0) {
        c.fail("N=50 vertex " + std::to_string(v) + ": |mse - V_n| = " +
               format_margin(std::abs(mc.empirical_mse - closed_form)) + " is " +
               format_margin(z) + " standard errors");
      }
    }
    if (c.passed) {
      c.detail += "; N=50 Monte-Carlo max |z| = " + format_margin(worst_z) + " over 20 vertices";
    }
  }
  return c;
}

Criterion criterion_bayes(const std::vector<Instance>& suite) {
  Criterion c;
  StreamRng rng(66, 4);
  double worst_identity = 0.0;
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const Instance& instance = suite[k];
    const auto& pi = instance.design.first_order();
    const ProductPrior prior = k % 3 == 0 ? ProductPrior::three_point(instance.bounds, 0.25)
                                          : ProductPrior::vertex(instance.bounds);
    const Estimator midpoint = Estimator::midpoint_ht(instance.bounds, pi);
    double predicted = 0.0;
    for (int i = 0; i < instance.bounds.units(); ++i) {
      predicted += prior.variance(i) * (1.0 / pi[static_cast<std::size_t>(i)] - 1.0);
    }
    const double bayes = product_prior_bayes_risk(instance.design, midpoint, prior);
    const double err = std::abs(bayes - predicted);
    worst_identity = std::max(worst_identity, err);
    if (err > 1e-9) c.fail(instance.label + ": Bayes identity off by " + format_margin(err));

    std::vector<Estimator> challengers = {Estimator::plain_ht(instance.bounds.units(), pi)};
    for (int j = 0; j < 3; ++j) {
      challengers.push_back(
          Estimator::differenced_ht(testsupport::random_point_in(rng, instance.bounds), pi));
    }
    for (const auto& challenger : challengers) {
      const BayesDominance cmp = bayes_dominance_audit(instance.design, prior, challenger);
      if (!cmp.challenger_at_least) {
        c.fail(instance.label + ": challenger beat the midpoint estimator by " +
               format_margin(-cmp.margin));
      }
    }
  }
  if (c.passed) {
    c.detail = "identity max error " + format_margin(worst_identity) + " across " +
               std::to_string(suite.size()) + " designs, 4 challengers each";
  }
  return c;
}

Criterion criterion_equivariance() {
  Criterion c;
  StreamRng rng(77, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const PopulationBounds bounds = testsupport::random_bounds(rng, n);
    const auto pi = testsupport::random_pi(rng, n);
    const double scale = testsupport::uniform_in(rng, 0.05, 8.0);
    std::vector<double> shift(static_cast<std::size_t>(n));
    double shift_total = 0.0;
    for (auto& s : shift) {
      s = testsupport::uniform_in(rng, -6.0, 6.0);
      shift_total += s;
    }
    const PopulationBounds transformed = affine_transform(bounds, scale, shift);
    const OutcomeVector y = testsupport::random_point_in(rng, bounds);
    Sample sample, mapped;
    for (int i = 0; i < n; ++i) {
      if (rng.next_below(2) == 1) {
        const auto u = static_cast<std::size_t>(i);
        sample.indices.push_back(i);
        sample.values.push_back(y[u]);
        mapped.indices.push_back(i);
        mapped.values.push_back(scale * y[u] + shift[u]);
      }
    }
    const double original = midpoint_ht(bounds, pi, sample);
    const double transformed_estimate = midpoint_ht(transformed, pi, mapped);
    const double predicted = scale * original + shift_total;
    const double rel = std::abs(transformed_estimate - predicted) /
                       std::max({1.0, std::abs(transformed_estimate), std::abs(predicted)});
    worst = std::max(worst, rel);
    if (rel > 1e-12) c.fail("relative deviation " + format_margin(rel));
  }
  if (c.passed) c.detail = "1000 triples, max relative deviation " + format_margin(worst);
  return c;
}

Criterion criterion_reproducibility() {
  Criterion c;
  testsupport::TempDir dir;
  std::string csv = "id,a,b,y\n";
  StreamRng rng(88, 6);
  for (int i = 0; i < 8; ++i) {
    const double mid = testsupport::uniform_in(rng, -2.0, 2.0);
    const double radius = testsupport::uniform_in(rng, 0.3, 1.8);
    const double y = testsupport::uniform_in(rng, mid - radius, mid + radius);
    csv += "u" + std::to_string(i + 1) + "," + minimax::format_double(mid - radius) + "," +
           minimax::format_double(mid + radius) + "," + minimax::format_double(y) + "\n";
  }
  dir.write("pop.csv", csv);

  const std::string args = "simulate --bounds " + dir.file("pop.csv") +
                           " --budget 3.5 --reps 200000 --seed 99 --strategy compare --output ";
  const auto first = testsupport::run_cli(dir, args + dir.file("a.json"), "MINIMAX_SAMPLER_THREADS=1");
  const auto second = testsupport::run_cli(dir, args + dir.file("b.json"), "MINIMAX_SAMPLER_THREADS=1");
  const auto parallel = testsupport::run_cli(dir, args + dir.file("c.json"), "MINIMAX_SAMPLER_THREADS=8");
  if (first.exit_code != 0 || second.exit_code != 0 || parallel.exit_code != 0) {
    c.fail("simulate exited nonzero");
    return c;
  }
  const std::string a = testsupport::read_file(dir.file("a.json"));
  const std::string b = testsupport::read_file(dir.file("b.json"));
  const std::string parallel_bytes = testsupport::read_file(dir.file("c.json"));
  if (a.empty()) c.fail("empty report");
  if (a != b) c.fail("two serial runs differ");
  if (a != parallel_bytes) c.fail("serial and 8-thread runs differ");
  if (c.passed) {
    c.detail = "byte-identical across reruns and thread counts (" +
               std::to_string(a.size()) + " bytes)";
  }
  return c;
}

}  // namespace

int main() {
  std::printf("building shared instance suite...\n");
  // 140 instances: 105 enumerated (dense/sparse/expanded-Poisson) + 35 SRSWOR
  const std::vector<Instance> suite = build_suite(140);

  struct Entry {
    std::string name;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {"lower-bound certificate (uniform-vertex mean >= D_pi)",
       [&] { return criterion_lower_bound(suite); }},
      {"sharpness equivalence (attains <=> pairwise independent)",
       [&] { return criterion_sharpness(suite); }},
      {"Walsh recovery of pair coefficients and constant term",
       [&] { return criterion_walsh(suite); }},
      {"water-fill optimality against the 50-per-axis grid", criterion_waterfill},
      {"strategy attainment (exact N=12, Monte-Carlo N=50)", criterion_attainment},
      {"Bayes-risk identity and dominance", [&] { return criterion_bayes(suite); }},
      {"affine equivariance of the midpoint estimator", criterion_equivariance},
      {"byte-identical simulate reports", criterion_reproducibility},
  };

  int failures = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Criterion result = entries[k].run();
    report(static_cast<int>(k) + 1, entries[k].name, result);
    if (!result.passed) ++failures;
  }
  std::printf("RESULT: %zu/%zu criteria passed\n", entries.size() - failures, entries.size());
  return failures;
}
