#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minimax/errors.hpp"

namespace minimax {

struct BoundsRecord {
  std::string id;
  double lower = 0.0;
  double upper = 0.0;
};

/// One outcome value per unit, in population order.
using OutcomeVector = std::vector<double>;

/// Entries are -1 or +1, one per unit.
using SignVector = std::vector<int>;

/// Per-unit intervals [a_i, b_i] with derived midpoints m_i = (a_i+b_i)/2
/// and radii r_i = (b_i-a_i)/2. Unit order is the ingest order and defines
/// the index space used everywhere else. Immutable after construction.
class PopulationBounds {
 public:
  PopulationBounds() = default;  // empty placeholder; load_bounds makes real ones

  static PopulationBounds load_bounds(const std::vector<BoundsRecord>& records);

  int units() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<double>& midpoints() const { return midpoint_; }
  const std::vector<double>& radii() const { return radius_; }

  double midpoint_total() const;
  double max_radius() const;

  /// Default containment tolerance: 1e-9 * max(1, max_i r_i).
  double default_tolerance() const;

  /// Throws DegenerateUnit for the first unit with r_i = 0. Minimax
  /// operations require strictly positive radii.
  void require_positive_radii() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> lower_, upper_, midpoint_, radius_;
};

/// y_i = m_i + r_i * eps_i. The result lies in the bounds rectangle exactly.
OutcomeVector vertex(const PopulationBounds& bounds, const SignVector& signs);

/// Vertex from a bitmask: bit i set means eps_i = +1.
OutcomeVector vertex(const PopulationBounds& bounds, std::uint64_t mask);

SignVector signs_from_mask(std::uint64_t mask, int units);

/// True iff a_i - tau <= y_i <= b_i + tau for all i.
bool contains(const PopulationBounds& bounds, const OutcomeVector& y, double tau);

double total(const OutcomeVector& y);

/// Result of removing zero-radius units. Their outcomes are known, so their
/// midpoint sum is an additive constant to carry through any estimate.
struct StripResult {
  PopulationBounds active;
  std::vector<std::string> removed_ids;
  double removed_midpoint_total = 0.0;
  std::vector<int> active_to_original;  // index map into the original order
};

StripResult strip_degenerate(const PopulationBounds& bounds);

}  // namespace minimax
