#include "minimax/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace minimax {

namespace {

void require_positive_radii(std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) {
      throw DegenerateUnit("index " + std::to_string(i + 1));
    }
  }
}

}  // namespace

double d_pi(std::span<const double> radii, std::span<const double> pi) {
  if (radii.size() != pi.size()) {
    throw DimensionMismatch("radii and pi differ in length");
  }
  require_positive_radii(radii);
  double sum = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(pi[i] > 0.0)) throw ZeroInclusion(i);
    if (!(pi[i] <= 1.0)) {
      throw InvalidProbability("pi[" + std::to_string(i + 1) + "] exceeds 1");
    }
    sum += radii[i] * radii[i] * (1.0 - pi[i]) / pi[i];
  }
  return sum;
}

DesignSolution solve_waterfill(std::span<const double> radii, double budget) {
  const auto n_units = radii.size();
  if (n_units == 0) throw EmptyPopulation();
  require_positive_radii(radii);
  const double N = static_cast<double>(n_units);
  if (!(budget > 0.0) || budget > N) {
    throw BudgetOutOfRange("n = " + std::to_string(budget) + " outside (0, " +
                           std::to_string(n_units) + "]");
  }

  DesignSolution out;
  out.budget = budget;

  if (budget == N) {
    out.pi_star.assign(n_units, 1.0);
    out.c = std::numeric_limits<double>::infinity();
    out.lambda = 0.0;
    out.v_n = 0.0;
    out.capped.resize(n_units);
    std::iota(out.capped.begin(), out.capped.end(), 0);
    return out;
  }

  // Sort radii descending: the largest radius hits its cap pi = 1 first.
  std::vector<std::size_t> order(n_units);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });

  // With j units capped, H(c) = j + c * S_j where S_j sums the remaining
  // radii. Walk the breakpoints c = 1/r until the segment containing n is
  // found, then solve j + c S_j = n for c.
  double suffix = 0.0;
  for (std::size_t i : order) suffix += radii[i];
  double c = budget / suffix;  // segment with no caps
  for (std::size_t j = 0; j < n_units; ++j) {
    const double breakpoint = 1.0 / radii[order[j]];
    const double h_here = static_cast<double>(j) + breakpoint * suffix;
    if (h_here >= budget) {
      c = (budget - static_cast<double>(j)) / suffix;
      break;
    }
    suffix -= radii[order[j]];
    c = suffix > 0.0 ? (budget - static_cast<double>(j + 1)) / suffix
                     : std::numeric_limits<double>::infinity();
  }

  out.c = c;
  out.lambda = 1.0 / (c * c);
  out.pi_star.resize(n_units);
  out.v_n = 0.0;
  for (std::size_t i = 0; i < n_units; ++i) {
    const double p = std::min(1.0, c * radii[i]);
    out.pi_star[i] = p;
    if (p == 1.0) out.capped.push_back(static_cast<int>(i));
    out.v_n += radii[i] * radii[i] * (1.0 - p) / p;
  }
  return out;
}

double minimax_value(std::span<const double> radii, double budget) {
  return solve_waterfill(radii, budget).v_n;
}

bool kkt_check(std::span<const double> radii, double budget, std::span<const double> candidate,
               double tol) {
  if (candidate.size() != radii.size()) {
    throw DimensionMismatch("candidate and radii differ in length");
  }
  double candidate_sum = 0.0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (!(candidate[i] > 0.0) || !(candidate[i] <= 1.0)) {
      throw InfeasibleCandidate("pi[" + std::to_string(i + 1) + "] outside (0, 1]");
    }
    candidate_sum += candidate[i];
  }
  if (candidate_sum > budget + 1e-12) {
    throw InfeasibleCandidate("sum pi = " + std::to_string(candidate_sum) + " exceeds budget " +
                              std::to_string(budget));
  }

  const DesignSolution opt = solve_waterfill(radii, budget);
  auto f = [&](std::span<const double> pi) {
    double sum = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) sum += radii[i] * radii[i] / pi[i];
    return sum;
  };
  bool ok = f(candidate) >= f(opt.pi_star) - tol;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r2 = radii[i] * radii[i];
    const double lhs = r2 / candidate[i] - r2 / opt.pi_star[i];
    const double rhs = -opt.lambda * (candidate[i] - opt.pi_star[i]);
    if (lhs < rhs - tol) ok = false;
  }
  return ok;
}

}  // namespace minimax
