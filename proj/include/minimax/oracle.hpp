#pragma once

#include <cstdint>
#include <vector>

#include "minimax/design.hpp"
#include "minimax/estimators.hpp"
#include "minimax/population.hpp"

namespace minimax {

/// Vertex-enumeration cap: profiles walk all 2^N rectangle corners.
inline constexpr int kMaxProfileUnits = 20;

/// Exact risks at every vertex of the bounds rectangle, indexed by sign
/// mask (bit i set means eps_i = +1). mean is the uniform-vertex Bayes
/// risk, so mean <= sup always.
struct VertexRiskProfile {
  int units = 0;
  std::vector<double> risks;  // size 2^units
  double sup = 0.0;
  double mean = 0.0;
};

/// Exact squared-error risk sum_s p(s) (delta_s(y_s) - T(y))^2 by full
/// support enumeration. The design must be enumerable.
double exact_risk_enum(const Design& design, const Estimator& estimator, const OutcomeVector& y);

/// Exact bias sum_s p(s) delta_s(y_s) - T(y); zero for unbiased estimators.
double exact_bias_enum(const Design& design, const Estimator& estimator, const OutcomeVector& y);

/// max_units can only lower the profile cap, never raise it.
VertexRiskProfile vertex_risk_profile(const Design& design, const Estimator& estimator,
                                      const PopulationBounds& bounds,
                                      int max_units = kMaxProfileUnits);

/// Unnormalized in-place Walsh-Hadamard transform; length must be a power
/// of two. data[k] becomes sum_j data[j] (-1)^popcount(j & k).
void walsh_hadamard(std::vector<double>& data);

/// Walsh coefficients of a full MidpointHT vertex-risk profile. For the
/// midpoint-differenced estimator the profile expands as
///   R(eps) = D_pi + 2 sum_{i<j} Delta_ij/(pi_i pi_j) r_i r_j eps_i eps_j,
/// so the constant term recovers D_pi, each pair coefficient c_ij recovers
/// 2 Delta_ij r_i r_j/(pi_i pi_j) (and hence Delta_ij itself), and every
/// other coefficient vanishes; residual_max reports the largest one seen.
struct WalshCoefficients {
  int units = 0;
  double constant = 0.0;
  std::vector<double> pair;       // row-major upper triangle, i < j
  std::vector<double> delta_hat;  // implied Delta_ij = c_ij pi_i pi_j / (2 r_i r_j)
  double residual_max = 0.0;      // max |coefficient| over masks with popcount not in {0, 2}

  double pair_coefficient(int i, int j) const;
  double implied_delta(int i, int j) const;
};

WalshCoefficients walsh_delta_recovery(const VertexRiskProfile& profile,
                                       const InclusionProbabilities& pi,
                                       const std::vector<double>& radii);

/// Certifies the sharpness equivalence on one design: the midpoint
/// estimator attains the lower bound D_pi at the vertices iff the design
/// is pairwise independent.
struct SharpnessVerdict {
  double d_pi = 0.0;
  double sup_vertex_risk = 0.0;
  double mean_vertex_risk = 0.0;
  double delta_max = 0.0;
  double walsh_residual_max = 0.0;
  double tol = 0.0;
  bool attains = false;
  bool pairwise_independent = false;
  bool equivalence_holds = false;  // attains <=> pairwise_independent
};

SharpnessVerdict sharpness_audit(const Design& design, const PopulationBounds& bounds, double tol);

/// Independent product prior on the bounds rectangle: per-unit discrete
/// marginals with mean m_i and positive variance. Default is the two-point
/// vertex marginal {a_i, b_i} at weight 1/2 each (sigma_i^2 = r_i^2); the
/// three-point variant puts {a_i, m_i, b_i} at weights (q, 1-2q, q)
/// (sigma_i^2 = 2 q r_i^2).
class ProductPrior {
 public:
  static ProductPrior vertex(const PopulationBounds& bounds);
  static ProductPrior three_point(const PopulationBounds& bounds, double q);
  static ProductPrior from_marginals(const PopulationBounds& bounds,
                                     std::vector<std::vector<double>> support,
                                     std::vector<std::vector<double>> weights);

  int units() const { return static_cast<int>(support_.size()); }
  const std::vector<double>& support(int i) const { return support_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& weights(int i) const { return weights_[static_cast<std::size_t>(i)]; }
  double mean(int i) const { return mean_[static_cast<std::size_t>(i)]; }
  double variance(int i) const { return variance_[static_cast<std::size_t>(i)]; }
  std::uint64_t combinations() const;

 private:
  ProductPrior() = default;

  std::vector<std::vector<double>> support_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> mean_;
  std::vector<double> variance_;
};

/// Exact Bayes risk of an estimator under a product prior, by double
/// enumeration over the prior support and the design support. For the
/// midpoint estimator this equals sum_i sigma_i^2 (1/pi_i - 1) for any
/// design with exact enumeration, pairwise independent or not.
double product_prior_bayes_risk(const Design& design, const Estimator& estimator,
                                const ProductPrior& prior);

struct BayesDominance {
  double challenger_bayes_risk = 0.0;
  double midpoint_bayes_risk = 0.0;
  double margin = 0.0;  // challenger - midpoint
  bool challenger_at_least = false;
};

/// Verifies the challenger is unbiased on every prior support point, then
/// compares Bayes risks: the midpoint estimator is never beaten (within
/// tol). Throws BiasedChallenger when the unbiasedness precondition fails.
BayesDominance bayes_dominance_audit(const Design& design, const ProductPrior& prior,
                                     const Estimator& challenger, double tol = 1e-9);

}  // namespace minimax
