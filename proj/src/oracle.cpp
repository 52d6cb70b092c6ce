#include "minimax/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "minimax/allocator.hpp"
#include "minimax/parallel.hpp"

namespace minimax {

namespace {

Design enumerable_or_throw(const Design& design) {
  Design expanded = design.enumerated_form();
  if (expanded.subsets().size() > kMaxEnumeratedSupport) {
    throw EnumerationTooLarge(expanded.subsets().size(), kMaxEnumeratedSupport);
  }
  return expanded;
}

double risk_on_enumerated(const Design& enumerated, const Estimator& estimator,
                          const OutcomeVector& y) {
  const double t = total(y);
  double risk = 0.0;
  for (std::size_t s = 0; s < enumerated.subsets().size(); ++s) {
    const double p = enumerated.probabilities()[s];
    if (p == 0.0) continue;
    const double err = estimator.evaluate(enumerated.subsets()[s], y) - t;
    risk += p * err * err;
  }
  return risk;
}

double bias_on_enumerated(const Design& enumerated, const Estimator& estimator,
                          const OutcomeVector& y) {
  double mean = 0.0;
  for (std::size_t s = 0; s < enumerated.subsets().size(); ++s) {
    const double p = enumerated.probabilities()[s];
    if (p == 0.0) continue;
    mean += p * estimator.evaluate(enumerated.subsets()[s], y);
  }
  return mean - total(y);
}

}  // namespace

double exact_risk_enum(const Design& design, const Estimator& estimator, const OutcomeVector& y) {
  return risk_on_enumerated(enumerable_or_throw(design), estimator, y);
}

double exact_bias_enum(const Design& design, const Estimator& estimator, const OutcomeVector& y) {
  return bias_on_enumerated(enumerable_or_throw(design), estimator, y);
}

VertexRiskProfile vertex_risk_profile(const Design& design, const Estimator& estimator,
                                      const PopulationBounds& bounds, int max_units) {
  const int n = bounds.units();
  if (design.units() != n) throw DimensionMismatch("design and bounds disagree on N");
  const int cap = std::min(max_units, kMaxProfileUnits);
  if (n > cap) {
    throw PopulationTooLarge(static_cast<std::size_t>(n), static_cast<std::size_t>(cap));
  }
  const Design enumerated = enumerable_or_throw(design);

  VertexRiskProfile profile;
  profile.units = n;
  const std::size_t n_vertices = std::size_t{1} << n;
  profile.risks.assign(n_vertices, 0.0);

  constexpr std::size_t kBlock = 4096;
  const std::size_t n_blocks = (n_vertices + kBlock - 1) / kBlock;
  parallel_blocks(n_blocks, [&](std::size_t block) {
    OutcomeVector y(static_cast<std::size_t>(n));
    const std::size_t lo = block * kBlock;
    const std::size_t hi = std::min(n_vertices, lo + kBlock);
    for (std::size_t mask = lo; mask < hi; ++mask) {
      for (int i = 0; i < n; ++i) {
        y[static_cast<std::size_t>(i)] =
            (mask >> i) & 1ULL ? bounds.upper()[static_cast<std::size_t>(i)]
                               : bounds.lower()[static_cast<std::size_t>(i)];
      }
      profile.risks[mask] = risk_on_enumerated(enumerated, estimator, y);
    }
  });

  profile.sup = 0.0;
  double sum = 0.0;
  for (const double r : profile.risks) {
    profile.sup = std::max(profile.sup, r);
    sum += r;
  }
  profile.mean = sum / static_cast<double>(n_vertices);
  return profile;
}

void walsh_hadamard(std::vector<double>& data) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw DimensionMismatch("Walsh-Hadamard input length must be a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t base = 0; base < n; base += half << 1) {
      for (std::size_t k = base; k < base + half; ++k) {
        const double a = data[k];
        const double b = data[k + half];
        data[k] = a + b;
        data[k + half] = a - b;
      }
    }
  }
}

double WalshCoefficients::pair_coefficient(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto n = static_cast<std::size_t>(units);
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  // offset of (i, j), i < j, in the row-major upper triangle
  const std::size_t row_start = ui * n - ui * (ui + 1) / 2;
  return pair[row_start + (uj - ui - 1)];
}

double WalshCoefficients::implied_delta(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto n = static_cast<std::size_t>(units);
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  const std::size_t row_start = ui * n - ui * (ui + 1) / 2;
  return delta_hat[row_start + (uj - ui - 1)];
}

WalshCoefficients walsh_delta_recovery(const VertexRiskProfile& profile,
                                       const InclusionProbabilities& pi,
                                       const std::vector<double>& radii) {
  const int n = profile.units;
  const std::size_t n_vertices = std::size_t{1} << n;
  if (profile.risks.size() != n_vertices) {
    throw IncompleteProfile("expected " + std::to_string(n_vertices) + " vertex risks, have " +
                            std::to_string(profile.risks.size()));
  }
  if (pi.size() != static_cast<std::size_t>(n) || radii.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch("pi/radii length differs from profile size");
  }

  std::vector<double> spectrum = profile.risks;
  walsh_hadamard(spectrum);
  const double scale = 1.0 / static_cast<double>(n_vertices);

  WalshCoefficients out;
  out.units = n;
  out.constant = spectrum[0] * scale;
  out.pair.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  out.delta_hat.reserve(out.pair.capacity());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t mask = (std::size_t{1} << i) | (std::size_t{1} << j);
      const double c = spectrum[mask] * scale;
      out.pair.push_back(c);
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      out.delta_hat.push_back(c * pi[ui] * pi[uj] / (2.0 * radii[ui] * radii[uj]));
    }
  }
  out.residual_max = 0.0;
  for (std::size_t mask = 1; mask < n_vertices; ++mask) {
    if (std::popcount(mask) == 2) continue;
    out.residual_max = std::max(out.residual_max, std::abs(spectrum[mask] * scale));
  }
  return out;
}

SharpnessVerdict sharpness_audit(const Design& design, const PopulationBounds& bounds,
                                 double tol) {
  if (tol < 0.0) throw InvalidProbability("tolerance must be nonnegative");
  bounds.require_positive_radii();
  const InclusionProbabilities& pi = design.first_order();
  const Estimator midpoint = Estimator::midpoint_ht(bounds, pi);
  const VertexRiskProfile profile = vertex_risk_profile(design, midpoint, bounds);
  const WalshCoefficients walsh = walsh_delta_recovery(profile, pi, bounds.radii());
  const SecondOrderMatrix second = design.second_order();

  SharpnessVerdict verdict;
  verdict.tol = tol;
  verdict.d_pi = d_pi(bounds.radii(), pi);
  verdict.sup_vertex_risk = profile.sup;
  verdict.mean_vertex_risk = profile.mean;
  verdict.delta_max = second.max_offdiag_delta();
  verdict.attains = std::abs(profile.sup - verdict.d_pi) <= tol;
  verdict.pairwise_independent = verdict.delta_max <= tol;
  verdict.equivalence_holds = verdict.attains == verdict.pairwise_independent;

  // Full reconstruction error: constant term against D_pi, pair terms
  // against 2 Delta r_i r_j/(pi_i pi_j), everything else against zero.
  double residual = std::max(walsh.residual_max, std::abs(walsh.constant - verdict.d_pi));
  for (int i = 0; i < bounds.units(); ++i) {
    for (int j = i + 1; j < bounds.units(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const double predicted = 2.0 * second.delta(i, j) * bounds.radii()[ui] *
                               bounds.radii()[uj] / (pi[ui] * pi[uj]);
      residual = std::max(residual, std::abs(walsh.pair_coefficient(i, j) - predicted));
    }
  }
  verdict.walsh_residual_max = residual;
  return verdict;
}

ProductPrior ProductPrior::vertex(const PopulationBounds& bounds) {
  std::vector<std::vector<double>> support;
  std::vector<std::vector<double>> weights;
  for (int i = 0; i < bounds.units(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    support.push_back({bounds.lower()[u], bounds.upper()[u]});
    weights.push_back({0.5, 0.5});
  }
  return from_marginals(bounds, std::move(support), std::move(weights));
}

ProductPrior ProductPrior::three_point(const PopulationBounds& bounds, double q) {
  if (!(q > 0.0) || q > 0.5) throw InvalidPrior("three-point weight q must be in (0, 1/2]");
  std::vector<std::vector<double>> support;
  std::vector<std::vector<double>> weights;
  for (int i = 0; i < bounds.units(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    support.push_back({bounds.lower()[u], bounds.midpoints()[u], bounds.upper()[u]});
    weights.push_back({q, 1.0 - 2.0 * q, q});
  }
  return from_marginals(bounds, std::move(support), std::move(weights));
}

ProductPrior ProductPrior::from_marginals(const PopulationBounds& bounds,
                                          std::vector<std::vector<double>> support,
                                          std::vector<std::vector<double>> weights) {
  const auto n = static_cast<std::size_t>(bounds.units());
  if (support.size() != n || weights.size() != n) {
    throw DimensionMismatch("prior marginals differ from population size");
  }
  ProductPrior prior;
  prior.support_ = std::move(support);
  prior.weights_ = std::move(weights);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pts = prior.support_[i];
    const auto& wts = prior.weights_[i];
    const std::string unit = "unit '" + bounds.ids()[i] + "'";
    if (pts.empty() || pts.size() != wts.size()) {
      throw InvalidPrior(unit + ": support and weights disagree");
    }
    if (pts.size() > 3) {
      throw PriorTooLarge(unit + " has " + std::to_string(pts.size()) + " support points (max 3)");
    }
    double mass = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (!(wts[k] >= 0.0)) throw InvalidPrior(unit + ": negative weight");
      if (pts[k] < bounds.lower()[i] || pts[k] > bounds.upper()[i]) {
        throw InvalidPrior(unit + ": support point outside its interval");
      }
      mass += wts[k];
      mean += wts[k] * pts[k];
    }
    if (std::abs(mass - 1.0) > 1e-12) throw InvalidPrior(unit + ": weights do not sum to 1");
    if (std::abs(mean - bounds.midpoints()[i]) > 1e-12) {
      throw InvalidPrior(unit + ": marginal mean differs from the midpoint");
    }
    double variance = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double dev = pts[k] - mean;
      variance += wts[k] * dev * dev;
    }
    if (!(variance > 0.0)) throw InvalidPrior(unit + ": marginal variance is zero");
    prior.mean_.push_back(mean);
    prior.variance_.push_back(variance);
  }
  return prior;
}

std::uint64_t ProductPrior::combinations() const {
  std::uint64_t combos = 1;
  for (const auto& pts : support_) {
    combos *= pts.size();
    if (combos > kMaxEnumeratedSupport) {
      throw PriorTooLarge("joint support exceeds " + std::to_string(kMaxEnumeratedSupport) +
                          " points");
    }
  }
  return combos;
}

namespace {

// Runs fn(y, weight) over every point of the prior's joint support.
template <typename Fn>
void for_each_prior_point(const ProductPrior& prior, Fn&& fn) {
  const auto n = static_cast<std::size_t>(prior.units());
  std::vector<std::size_t> digit(n, 0);
  OutcomeVector y(n);
  while (true) {
    double weight = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = prior.support(static_cast<int>(i))[digit[i]];
      weight *= prior.weights(static_cast<int>(i))[digit[i]];
    }
    fn(static_cast<const OutcomeVector&>(y), weight);
    std::size_t pos = 0;
    while (pos < n && ++digit[pos] == prior.support(static_cast<int>(pos)).size()) {
      digit[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
}

}  // namespace

double product_prior_bayes_risk(const Design& design, const Estimator& estimator,
                                const ProductPrior& prior) {
  if (design.units() != prior.units()) throw DimensionMismatch("design and prior disagree on N");
  prior.combinations();  // enforces the joint-support cap
  const Design enumerated = enumerable_or_throw(design);
  double bayes = 0.0;
  for_each_prior_point(prior, [&](const OutcomeVector& y, double weight) {
    if (weight == 0.0) return;
    bayes += weight * risk_on_enumerated(enumerated, estimator, y);
  });
  return bayes;
}

BayesDominance bayes_dominance_audit(const Design& design, const ProductPrior& prior,
                                     const Estimator& challenger, double tol) {
  if (design.units() != prior.units()) throw DimensionMismatch("design and prior disagree on N");
  prior.combinations();
  const Design enumerated = enumerable_or_throw(design);

  for_each_prior_point(prior, [&](const OutcomeVector& y, double weight) {
    if (weight == 0.0) return;
    const double bias = bias_on_enumerated(enumerated, challenger, y);
    if (std::abs(bias) > tol) {
      throw BiasedChallenger("bias " + std::to_string(bias) + " at a prior support point");
    }
  });

  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(prior.units()));
  for (int i = 0; i < prior.units(); ++i) means.push_back(prior.mean(i));
  const Estimator midpoint = Estimator::differenced_ht(means, enumerated.first_order());

  BayesDominance out;
  out.challenger_bayes_risk = product_prior_bayes_risk(enumerated, challenger, prior);
  out.midpoint_bayes_risk = product_prior_bayes_risk(enumerated, midpoint, prior);
  out.margin = out.challenger_bayes_risk - out.midpoint_bayes_risk;
  out.challenger_at_least = out.margin >= -tol;
  return out;
}

}  // namespace minimax
