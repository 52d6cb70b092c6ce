#pragma once

#include <span>
#include <vector>

#include "minimax/design.hpp"

namespace minimax {

/// Solution of the minimax design problem under an expected-sample-size
/// budget: pi_i = min(1, c r_i) with sum pi_i = n.
struct DesignSolution {
  InclusionProbabilities pi_star;
  double c = 0.0;       // +inf sentinel in the census case (n == N); unusable there
  double lambda = 0.0;  // KKT multiplier c^-2 (0 in the census case)
  double v_n = 0.0;     // minimax value sum r_i^2 (1 - pi_i)/pi_i at pi_star
  std::vector<int> capped;  // 0-based indices with pi_i == 1
  double budget = 0.0;
};

/// Worst-case risk lower bound D_pi = sum r_i^2 (1 - pi_i)/pi_i.
/// Requires r_i > 0 and 0 < pi_i <= 1; zero iff every pi_i is 1.
double d_pi(std::span<const double> radii, std::span<const double> pi);

/// Water-fill: the unique c > 0 with H(c) = sum_i min(1, c r_i) = n for
/// 0 < n < N. H is piecewise affine with breakpoints at 1/r_i, so the
/// bracketing segment is located by prefix sums over the sorted radii and
/// solved linearly; no iteration or tolerance involved. n = N returns the
/// census solution (all pi = 1, c = +inf, v_n = 0).
DesignSolution solve_waterfill(std::span<const double> radii, double budget);

/// V_n, the optimal value of solve_waterfill. Equals d_pi(r, pi_star).
double minimax_value(std::span<const double> radii, double budget);

/// Certifies optimality of the water-fill point against a feasible
/// candidate: f(candidate) >= f(pi_star) - tol with f(pi) = sum r_i^2/pi_i,
/// and the per-coordinate supporting inequality
///   r_i^2/pi_i - r_i^2/pi*_i >= -lambda (pi_i - pi*_i) - tol
/// as a diagnostic. Throws InfeasibleCandidate if the candidate violates
/// 0 < pi_i <= 1 or sum pi_i <= n.
bool kkt_check(std::span<const double> radii, double budget, std::span<const double> candidate,
               double tol);

}  // namespace minimax
