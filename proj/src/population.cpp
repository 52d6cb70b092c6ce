#include "minimax/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace minimax {

PopulationBounds PopulationBounds::load_bounds(const std::vector<BoundsRecord>& records) {
  if (records.empty()) throw EmptyPopulation();
  PopulationBounds out;
  out.ids_.reserve(records.size());
  out.lower_.reserve(records.size());
  out.upper_.reserve(records.size());
  out.midpoint_.reserve(records.size());
  out.radius_.reserve(records.size());
  std::unordered_set<std::string> seen;
  for (const auto& rec : records) {
    if (!(rec.lower <= rec.upper)) throw InvertedInterval(rec.id);
    if (!seen.insert(rec.id).second) throw DuplicateId(rec.id);
    out.ids_.push_back(rec.id);
    out.lower_.push_back(rec.lower);
    out.upper_.push_back(rec.upper);
    const double m = (rec.lower + rec.upper) / 2.0;
    out.midpoint_.push_back(m);
    // Radius recovered from the midpoint so m + r reproduces b exactly.
    out.radius_.push_back(rec.upper - m);
  }
  return out;
}

double PopulationBounds::midpoint_total() const {
  return std::accumulate(midpoint_.begin(), midpoint_.end(), 0.0);
}

double PopulationBounds::max_radius() const {
  return radius_.empty() ? 0.0 : *std::max_element(radius_.begin(), radius_.end());
}

double PopulationBounds::default_tolerance() const {
  return 1e-9 * std::max(1.0, max_radius());
}

void PopulationBounds::require_positive_radii() const {
  for (int i = 0; i < units(); ++i) {
    if (!(radius_[i] > 0.0)) throw DegenerateUnit(ids_[i]);
  }
}

OutcomeVector vertex(const PopulationBounds& bounds, const SignVector& signs) {
  const auto n = static_cast<std::size_t>(bounds.units());
  if (signs.size() != n) throw LengthMismatch("sign vector", signs.size(), n);
  OutcomeVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw Error("sign vector entries must be -1 or +1");
    }
    y[i] = signs[i] == 1 ? bounds.upper()[i] : bounds.lower()[i];
  }
  return y;
}

OutcomeVector vertex(const PopulationBounds& bounds, std::uint64_t mask) {
  const auto n = static_cast<std::size_t>(bounds.units());
  OutcomeVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (mask >> i) & 1ULL ? bounds.upper()[i] : bounds.lower()[i];
  }
  return y;
}

SignVector signs_from_mask(std::uint64_t mask, int units) {
  SignVector signs(static_cast<std::size_t>(units));
  for (int i = 0; i < units; ++i) signs[i] = (mask >> i) & 1ULL ? 1 : -1;
  return signs;
}

bool contains(const PopulationBounds& bounds, const OutcomeVector& y, double tau) {
  const auto n = static_cast<std::size_t>(bounds.units());
  if (y.size() != n) throw LengthMismatch("outcome vector", y.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] < bounds.lower()[i] - tau || y[i] > bounds.upper()[i] + tau) return false;
  }
  return true;
}

double total(const OutcomeVector& y) { return std::accumulate(y.begin(), y.end(), 0.0); }

StripResult strip_degenerate(const PopulationBounds& bounds) {
  StripResult out;
  std::vector<BoundsRecord> kept;
  for (int i = 0; i < bounds.units(); ++i) {
    if (bounds.radii()[i] > 0.0) {
      kept.push_back({bounds.ids()[i], bounds.lower()[i], bounds.upper()[i]});
      out.active_to_original.push_back(i);
    } else {
      out.removed_ids.push_back(bounds.ids()[i]);
      out.removed_midpoint_total += bounds.midpoints()[i];
    }
  }
  if (kept.empty()) throw EmptyPopulation();
  out.active = PopulationBounds::load_bounds(kept);
  return out;
}

}  // namespace minimax
