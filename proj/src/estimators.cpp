#include "minimax/estimators.hpp"

#include <cmath>
#include <numeric>

#include "minimax/allocator.hpp"

namespace minimax {

namespace {

void check_sample(const Sample& sample, int n_units) {
  if (sample.values.size() != sample.indices.size()) {
    const std::size_t first_missing = std::min(sample.values.size(), sample.indices.size());
    throw MissingValue("index " +
                       std::to_string(first_missing < sample.indices.size()
                                          ? sample.indices[first_missing] + 1
                                          : static_cast<int>(first_missing)));
  }
  for (std::size_t k = 0; k < sample.indices.size(); ++k) {
    const int i = sample.indices[k];
    if (i < 0 || i >= n_units) throw IndexOutOfRange(i + 1, static_cast<std::size_t>(n_units));
    if (std::isnan(sample.values[k])) throw MissingValue("index " + std::to_string(i + 1));
  }
}

double difference_estimate(std::span<const double> centers, double center_total,
                           std::span<const double> pi, std::span<const int> indices,
                           std::span<const double> values_by_position) {
  double sum = center_total;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto i = static_cast<std::size_t>(indices[k]);
    sum += (values_by_position[k] - centers[i]) / pi[i];
  }
  return sum;
}

}  // namespace

Estimator Estimator::midpoint_ht(const PopulationBounds& bounds, InclusionProbabilities pi) {
  if (pi.size() != static_cast<std::size_t>(bounds.units())) {
    throw DimensionMismatch("pi length differs from population size");
  }
  validate_inclusion_probabilities(pi);
  Estimator e;
  e.kind_ = Kind::MidpointHT;
  e.name_ = "midpoint_ht";
  e.n_units_ = bounds.units();
  e.centers_ = bounds.midpoints();
  e.center_total_ = bounds.midpoint_total();
  e.pi_ = std::move(pi);
  return e;
}

Estimator Estimator::plain_ht(int n_units, InclusionProbabilities pi) {
  if (pi.size() != static_cast<std::size_t>(n_units)) {
    throw DimensionMismatch("pi length differs from population size");
  }
  validate_inclusion_probabilities(pi);
  Estimator e;
  e.kind_ = Kind::PlainHT;
  e.name_ = "plain_ht";
  e.n_units_ = n_units;
  e.centers_.assign(static_cast<std::size_t>(n_units), 0.0);
  e.center_total_ = 0.0;
  e.pi_ = std::move(pi);
  return e;
}

Estimator Estimator::differenced_ht(std::vector<double> centers, InclusionProbabilities pi) {
  if (pi.size() != centers.size()) {
    throw DimensionMismatch("pi length differs from centers length");
  }
  validate_inclusion_probabilities(pi);
  Estimator e;
  e.kind_ = Kind::DifferencedHT;
  e.name_ = "differenced_ht";
  e.n_units_ = static_cast<int>(centers.size());
  e.center_total_ = std::accumulate(centers.begin(), centers.end(), 0.0);
  e.centers_ = std::move(centers);
  e.pi_ = std::move(pi);
  return e;
}

Estimator Estimator::custom(std::string name, int n_units,
                            std::function<double(const Sample&)> rule) {
  Estimator e;
  e.kind_ = Kind::Custom;
  e.name_ = std::move(name);
  e.n_units_ = n_units;
  e.rule_ = std::move(rule);
  return e;
}

double Estimator::operator()(const Sample& sample) const {
  check_sample(sample, n_units_);
  if (kind_ == Kind::Custom) return rule_(sample);
  return difference_estimate(centers_, center_total_, pi_, sample.indices, sample.values);
}

double Estimator::evaluate(std::span<const int> indices, std::span<const double> y) const {
  if (y.size() != static_cast<std::size_t>(n_units_)) {
    throw LengthMismatch("outcome vector", y.size(), static_cast<std::size_t>(n_units_));
  }
  if (kind_ == Kind::Custom) {
    Sample sample;
    sample.indices.assign(indices.begin(), indices.end());
    sample.values.reserve(indices.size());
    for (int i : indices) sample.values.push_back(y[static_cast<std::size_t>(i)]);
    return rule_(sample);
  }
  double sum = center_total_;
  for (int i : indices) {
    const auto u = static_cast<std::size_t>(i);
    sum += (y[u] - centers_[u]) / pi_[u];
  }
  return sum;
}

double midpoint_ht(const PopulationBounds& bounds, const InclusionProbabilities& pi,
                   const Sample& sample) {
  return Estimator::midpoint_ht(bounds, pi)(sample);
}

double plain_ht(const InclusionProbabilities& pi, const Sample& sample) {
  return Estimator::plain_ht(static_cast<int>(pi.size()), pi)(sample);
}

double differenced_ht(const std::vector<double>& centers, const InclusionProbabilities& pi,
                      const Sample& sample) {
  return Estimator::differenced_ht(centers, pi)(sample);
}

double exact_risk_difference(const std::vector<double>& centers, const InclusionProbabilities& pi,
                             const SecondOrderMatrix& second, const OutcomeVector& y) {
  const std::size_t n = centers.size();
  if (pi.size() != n || y.size() != n || static_cast<std::size_t>(second.units()) != n) {
    throw DimensionMismatch("centers, pi, second-order matrix, and y must agree in length");
  }
  validate_inclusion_probabilities(pi);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = y[i] - centers[i];
  double risk = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    risk += (1.0 - pi[i]) / pi[i] * z[i] * z[i];
  }
  for (int i = 0; i < second.units(); ++i) {
    for (int j = i + 1; j < second.units(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      risk += 2.0 * second.delta(i, j) / (pi[ui] * pi[uj]) * z[ui] * z[uj];
    }
  }
  return risk;
}

double sup_risk_pairwise(const PopulationBounds& bounds, const InclusionProbabilities& pi) {
  return d_pi(bounds.radii(), pi);
}

PopulationBounds affine_transform(const PopulationBounds& bounds, double scale,
                                  std::span<const double> shift) {
  if (!(scale > 0.0)) throw NonpositiveScale();
  if (shift.size() != static_cast<std::size_t>(bounds.units())) {
    throw DimensionMismatch("shift vector length differs from population size");
  }
  std::vector<BoundsRecord> records;
  records.reserve(static_cast<std::size_t>(bounds.units()));
  for (int i = 0; i < bounds.units(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    records.push_back(
        {bounds.ids()[u], scale * bounds.lower()[u] + shift[u], scale * bounds.upper()[u] + shift[u]});
  }
  return PopulationBounds::load_bounds(records);
}

bool estimate_in_range(const PopulationBounds& bounds, double estimate) {
  const double lo = std::accumulate(bounds.lower().begin(), bounds.lower().end(), 0.0);
  const double hi = std::accumulate(bounds.upper().begin(), bounds.upper().end(), 0.0);
  return estimate >= lo && estimate <= hi;
}

}  // namespace minimax
