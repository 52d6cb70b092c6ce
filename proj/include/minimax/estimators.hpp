#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "minimax/design.hpp"
#include "minimax/population.hpp"

namespace minimax {

/// A realized sample: 0-based unit indices plus the observed values, keyed
/// positionally (values[k] belongs to indices[k]).
struct Sample {
  std::vector<int> indices;
  std::vector<double> values;
};

/// An estimator bound to its inclusion probabilities (and centers). All
/// built-in kinds are difference estimators
///   sum_i w_i + sum_{i in S} (y_i - w_i)/pi_i
/// with w = midpoints (MidpointHT), w = 0 (PlainHT), or arbitrary known
/// centers (DifferencedHT). Custom wraps an arbitrary rule for oracle
/// challenger tests.
class Estimator {
 public:
  enum class Kind { MidpointHT, PlainHT, DifferencedHT, Custom };

  static Estimator midpoint_ht(const PopulationBounds& bounds, InclusionProbabilities pi);
  static Estimator plain_ht(int n_units, InclusionProbabilities pi);
  static Estimator differenced_ht(std::vector<double> centers, InclusionProbabilities pi);
  static Estimator custom(std::string name, int n_units,
                          std::function<double(const Sample&)> rule);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int units() const { return n_units_; }
  const std::vector<double>& centers() const { return centers_; }
  const InclusionProbabilities& pi() const { return pi_; }

  double operator()(const Sample& sample) const;

  /// Enumeration fast path: evaluate on the sample `indices` against a full
  /// outcome vector, without materializing a Sample. Built-in kinds read
  /// only the sampled coordinates of y.
  double evaluate(std::span<const int> indices, std::span<const double> y) const;

 private:
  Estimator() = default;

  Kind kind_ = Kind::MidpointHT;
  std::string name_;
  int n_units_ = 0;
  std::vector<double> centers_;  // empty for Custom
  double center_total_ = 0.0;
  InclusionProbabilities pi_;  // empty for Custom
  std::function<double(const Sample&)> rule_;
};

// Free-function entry points for one-off evaluation.
double midpoint_ht(const PopulationBounds& bounds, const InclusionProbabilities& pi,
                   const Sample& sample);
double plain_ht(const InclusionProbabilities& pi, const Sample& sample);
double differenced_ht(const std::vector<double>& centers, const InclusionProbabilities& pi,
                      const Sample& sample);

/// Closed-form exact risk of the difference estimator with centers w at y:
///   sum_i (1-pi_i)/pi_i z_i^2 + 2 sum_{i<j} Delta_ij/(pi_i pi_j) z_i z_j,
/// z = y - w. Needs exact second-order probabilities.
double exact_risk_difference(const std::vector<double>& centers, const InclusionProbabilities& pi,
                             const SecondOrderMatrix& second, const OutcomeVector& y);

/// Worst-case risk of MidpointHT over the bounds rectangle for a
/// pairwise-independent design; equals d_pi(r, pi).
double sup_risk_pairwise(const PopulationBounds& bounds, const InclusionProbabilities& pi);

/// Interval transform [a_i, b_i] -> [scale*a_i + shift_i, scale*b_i + shift_i].
/// Requires scale > 0. Midpoints map to scale*m_i + shift_i and radii to
/// scale*r_i, so estimates transform like the total.
PopulationBounds affine_transform(const PopulationBounds& bounds, double scale,
                                  std::span<const double> shift);

/// True iff the estimate lies in the attainable range [sum a_i, sum b_i].
/// Estimates are never clamped (that would break unbiasedness); this is a
/// diagnostic only.
bool estimate_in_range(const PopulationBounds& bounds, double estimate);

}  // namespace minimax
