#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minimax/design.hpp"
#include "minimax/estimators.hpp"
#include "minimax/population.hpp"

namespace minimax {

/// Empirical bias/MSE estimate from seeded replicates. Replicate k draws
/// its sample from stream stream_base + k, so runs are reproducible
/// bit-for-bit, serial or parallel.
struct SimulationResult {
  std::uint64_t replicates = 0;
  double empirical_mean = 0.0;
  double empirical_mse = 0.0;
  double mean_std_error = 0.0;
  double mse_std_error = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  double true_total = 0.0;
};

SimulationResult simulate(const Design& design, const Estimator& estimator,
                          const OutcomeVector& y, std::uint64_t replicates, std::uint64_t seed,
                          std::uint64_t stream_base = 0);

/// Head-to-head strategies for a bounds/budget pair: the minimax strategy
/// (Poisson water-fill + MidpointHT) against uniform-probability Poisson,
/// SRSWOR at the rounded budget, and the plain HT estimator on the minimax
/// design.
struct StrategyRow {
  std::string strategy;
  std::string estimator;
  std::size_t y_index = 0;
  double exact_risk = 0.0;  // closed-form difference-estimator risk at this y
  SimulationResult result;
};

struct StrategyComparison {
  std::vector<StrategyRow> rows;
  std::vector<std::string> strategies;
  std::vector<double> worst_case_mse;  // per strategy, max over the y list
  int srswor_sample_size = 0;
  bool srswor_rounded = false;
  std::string minimax_strategy = "minimax";
  bool minimax_worst_case_smallest = false;
};

StrategyComparison compare_strategies(const PopulationBounds& bounds, double budget,
                                      const std::vector<OutcomeVector>& y_list,
                                      std::uint64_t replicates, std::uint64_t seed);

}  // namespace minimax
