#include "minimax/mc.hpp"

#include <algorithm>
#include <cmath>

#include "minimax/allocator.hpp"
#include "minimax/parallel.hpp"

namespace minimax {

namespace {

// Replicates are accumulated in fixed-size blocks and the block sums are
// combined in block order, so the result is independent of the thread
// count (identical summation tree, serial or parallel).
constexpr std::uint64_t kBlockSize = 8192;

struct BlockSums {
  double sum_est = 0.0;
  double sum_est_sq = 0.0;
  double sum_sq_err = 0.0;
  double sum_sq_err_sq = 0.0;
};

}  // namespace

SimulationResult simulate(const Design& design, const Estimator& estimator,
                          const OutcomeVector& y, std::uint64_t replicates, std::uint64_t seed,
                          std::uint64_t stream_base) {
  if (replicates < 2) throw Error("simulate requires at least 2 replicates");
  if (y.size() != static_cast<std::size_t>(design.units())) {
    throw LengthMismatch("outcome vector", y.size(), static_cast<std::size_t>(design.units()));
  }
  const double t = total(y);

  const std::uint64_t n_blocks = (replicates + kBlockSize - 1) / kBlockSize;
  std::vector<BlockSums> blocks(n_blocks);
  parallel_blocks(n_blocks, [&](std::size_t block) {
    const std::uint64_t lo = static_cast<std::uint64_t>(block) * kBlockSize;
    const std::uint64_t hi = std::min(replicates, lo + kBlockSize);
    BlockSums sums;
    for (std::uint64_t rep = lo; rep < hi; ++rep) {
      const std::vector<int> indices = design.draw(seed, stream_base + rep);
      const double est = estimator.evaluate(indices, y);
      const double err = est - t;
      const double sq = err * err;
      sums.sum_est += est;
      sums.sum_est_sq += est * est;
      sums.sum_sq_err += sq;
      sums.sum_sq_err_sq += sq * sq;
    }
    blocks[block] = sums;
  });

  BlockSums totals;
  for (const auto& b : blocks) {
    totals.sum_est += b.sum_est;
    totals.sum_est_sq += b.sum_est_sq;
    totals.sum_sq_err += b.sum_sq_err;
    totals.sum_sq_err_sq += b.sum_sq_err_sq;
  }

  const auto reps = static_cast<double>(replicates);
  SimulationResult out;
  out.replicates = replicates;
  out.seed = seed;
  out.stream_base = stream_base;
  out.true_total = t;
  out.empirical_mean = totals.sum_est / reps;
  out.empirical_mse = totals.sum_sq_err / reps;
  const double var_est =
      std::max(0.0, (totals.sum_est_sq - reps * out.empirical_mean * out.empirical_mean) /
                        (reps - 1.0));
  const double var_sq =
      std::max(0.0,
               (totals.sum_sq_err_sq - reps * out.empirical_mse * out.empirical_mse) /
                   (reps - 1.0));
  out.mean_std_error = std::sqrt(var_est / reps);
  out.mse_std_error = std::sqrt(var_sq / reps);
  return out;
}

StrategyComparison compare_strategies(const PopulationBounds& bounds, double budget,
                                      const std::vector<OutcomeVector>& y_list,
                                      std::uint64_t replicates, std::uint64_t seed) {
  bounds.require_positive_radii();
  const int n = bounds.units();
  const DesignSolution solution = solve_waterfill(bounds.radii(), budget);

  const int srswor_k = static_cast<int>(std::llround(budget));
  if (srswor_k < 1 || srswor_k > n) {
    throw BudgetOutOfRange("SRSWOR baseline needs round(n) in 1..N, got " +
                           std::to_string(srswor_k));
  }

  StrategyComparison out;
  out.srswor_sample_size = srswor_k;
  out.srswor_rounded = static_cast<double>(srswor_k) != budget;

  const Design minimax_design = Design::poisson(solution.pi_star);
  const InclusionProbabilities uniform_pi(static_cast<std::size_t>(n),
                                          budget / static_cast<double>(n));
  const Design uniform_design = Design::poisson(uniform_pi);
  const Design srswor_design = Design::srswor(n, srswor_k);

  struct Arm {
    std::string strategy;
    const Design* design;
    Estimator estimator;
  };
  const std::vector<Arm> arms = {
      {"minimax", &minimax_design, Estimator::midpoint_ht(bounds, solution.pi_star)},
      {"uniform", &uniform_design, Estimator::midpoint_ht(bounds, uniform_pi)},
      {"srswor", &srswor_design, Estimator::midpoint_ht(bounds, srswor_design.first_order())},
      {"plain_ht", &minimax_design, Estimator::plain_ht(n, solution.pi_star)},
  };

  out.worst_case_mse.assign(arms.size(), 0.0);
  std::size_t row_index = 0;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const Arm& arm = arms[a];
    out.strategies.push_back(arm.strategy);
    const SecondOrderMatrix second = arm.design->second_order();
    for (std::size_t k = 0; k < y_list.size(); ++k) {
      StrategyRow row;
      row.strategy = arm.strategy;
      row.estimator = arm.estimator.name();
      row.y_index = k;
      // Distinct stream ranges per (strategy, y) row keep all rows
      // independent while staying reproducible.
      row.result = simulate(*arm.design, arm.estimator, y_list[k], replicates, seed,
                            static_cast<std::uint64_t>(row_index) * replicates);
      row.exact_risk =
          exact_risk_difference(arm.estimator.centers(), arm.estimator.pi(), second, y_list[k]);
      out.worst_case_mse[a] = std::max(out.worst_case_mse[a], row.result.empirical_mse);
      out.rows.push_back(std::move(row));
      ++row_index;
    }
  }

  bool smallest = true;
  for (std::size_t a = 1; a < arms.size(); ++a) {
    if (out.worst_case_mse[0] > out.worst_case_mse[a]) smallest = false;
  }
  out.minimax_worst_case_smallest = smallest;
  return out;
}

}  // namespace minimax
