#include "minimax/design.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "minimax/rng.hpp"

namespace minimax {

void validate_inclusion_probabilities(const InclusionProbabilities& pi) {
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (!(pi[i] > 0.0)) throw ZeroInclusion(i);
    if (!(pi[i] <= 1.0)) {
      throw InvalidProbability("pi[" + std::to_string(i + 1) + "] = " + std::to_string(pi[i]) +
                               " exceeds 1");
    }
  }
}

SecondOrderMatrix::SecondOrderMatrix(std::vector<double> pi, std::vector<double> joint_row_major)
    : n_(static_cast<int>(pi.size())), pi_(std::move(pi)), joint_(std::move(joint_row_major)) {
  if (joint_.size() != pi_.size() * pi_.size()) {
    throw DimensionMismatch("second-order matrix is not N x N");
  }
}

double SecondOrderMatrix::delta(int i, int j) const {
  if (i == j) return pi(i) * (1.0 - pi(i));
  return joint(i, j) - pi(i) * pi(j);
}

double SecondOrderMatrix::max_offdiag_delta() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs(delta(i, j)));
  }
  return worst;
}

Design Design::enumerated(int n_units, std::vector<std::vector<int>> subsets,
                          std::vector<double> probabilities) {
  if (n_units <= 0) throw EmptyPopulation();
  if (subsets.size() != probabilities.size()) {
    throw DimensionMismatch("subset list and probability list differ in length");
  }
  if (subsets.size() > kMaxEnumeratedSupport) {
    throw EnumerationTooLarge(subsets.size(), kMaxEnumeratedSupport);
  }
  double mass = 0.0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (!(probabilities[s] >= 0.0)) {
      throw InvalidProbability("subset " + std::to_string(s) + " has negative probability");
    }
    mass += probabilities[s];
    auto& subset = subsets[s];
    std::sort(subset.begin(), subset.end());
    for (std::size_t k = 0; k < subset.size(); ++k) {
      if (subset[k] < 0 || subset[k] >= n_units) {
        throw IndexOutOfRange(subset[k] + 1, static_cast<std::size_t>(n_units));
      }
      if (k > 0 && subset[k] == subset[k - 1]) {
        throw InvalidProbability("subset " + std::to_string(s) + " repeats an index");
      }
    }
  }
  if (std::abs(mass - 1.0) > 1e-12) {
    throw InvalidProbability("subset probabilities sum to " + std::to_string(mass));
  }

  Design d;
  d.kind_ = Kind::Enumerated;
  d.n_units_ = n_units;
  d.subsets_ = std::move(subsets);
  d.probs_ = std::move(probabilities);
  d.pi_.assign(static_cast<std::size_t>(n_units), 0.0);
  for (std::size_t s = 0; s < d.subsets_.size(); ++s) {
    for (int i : d.subsets_[s]) d.pi_[static_cast<std::size_t>(i)] += d.probs_[s];
  }
  for (std::size_t i = 0; i < d.pi_.size(); ++i) {
    if (!(d.pi_[i] > 0.0)) throw ZeroInclusion(i);
    d.pi_[i] = std::min(d.pi_[i], 1.0);  // clip summation round-off at the boundary
  }
  return d;
}

Design Design::poisson(InclusionProbabilities pi) {
  if (pi.empty()) throw EmptyPopulation();
  validate_inclusion_probabilities(pi);
  Design d;
  d.kind_ = Kind::Poisson;
  d.n_units_ = static_cast<int>(pi.size());
  d.pi_ = std::move(pi);
  return d;
}

Design Design::srswor(int n_units, int sample_size) {
  if (n_units <= 0) throw EmptyPopulation();
  if (sample_size <= 0 || sample_size > n_units) {
    throw BudgetOutOfRange("SRSWOR sample size " + std::to_string(sample_size) +
                           " outside 1.." + std::to_string(n_units));
  }
  Design d;
  d.kind_ = Kind::Srswor;
  d.n_units_ = n_units;
  d.sample_size_ = sample_size;
  d.pi_.assign(static_cast<std::size_t>(n_units),
               static_cast<double>(sample_size) / static_cast<double>(n_units));
  return d;
}

SecondOrderMatrix Design::second_order() const {
  const auto n = static_cast<std::size_t>(n_units_);
  std::vector<double> joint(n * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return joint[i * n + j]; };
  switch (kind_) {
    case Kind::Enumerated:
      for (std::size_t s = 0; s < subsets_.size(); ++s) {
        const auto& subset = subsets_[s];
        const double p = probs_[s];
        for (std::size_t a = 0; a < subset.size(); ++a) {
          for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const auto i = static_cast<std::size_t>(subset[a]);
            const auto j = static_cast<std::size_t>(subset[b]);
            at(i, j) += p;
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) at(j, i) = at(i, j);
      }
      break;
    case Kind::Poisson:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) at(i, j) = pi_[i] * pi_[j];
        }
      }
      break;
    case Kind::Srswor: {
      const double k = sample_size_;
      const double N = n_units_;
      const double pair = n_units_ > 1 ? k * (k - 1.0) / (N * (N - 1.0)) : 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) at(i, j) = pair;
        }
      }
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) at(i, i) = pi_[i];
  return SecondOrderMatrix(pi_, std::move(joint));
}

double Design::expected_size() const {
  return std::accumulate(pi_.begin(), pi_.end(), 0.0);
}

std::vector<int> Design::draw(std::uint64_t seed, std::uint64_t stream) const {
  StreamRng rng(seed, stream);
  std::vector<int> sample;
  switch (kind_) {
    case Kind::Poisson:
      for (int i = 0; i < n_units_; ++i) {
        if (rng.next_double() < pi_[static_cast<std::size_t>(i)]) sample.push_back(i);
      }
      break;
    case Kind::Srswor: {
      std::vector<int> order(static_cast<std::size_t>(n_units_));
      std::iota(order.begin(), order.end(), 0);
      for (int j = 0; j < sample_size_; ++j) {
        const auto pick =
            j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_units_ - j)));
        std::swap(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(pick)]);
        sample.push_back(order[static_cast<std::size_t>(j)]);
      }
      std::sort(sample.begin(), sample.end());
      break;
    }
    case Kind::Enumerated: {
      const double u = rng.next_double();
      double cum = 0.0;
      std::size_t chosen = subsets_.size() - 1;  // tail round-off falls on the last subset
      for (std::size_t s = 0; s < subsets_.size(); ++s) {
        cum += probs_[s];
        if (u < cum) {
          chosen = s;
          break;
        }
      }
      sample = subsets_[chosen];
      break;
    }
  }
  return sample;
}

bool Design::pairwise_independent(double tol) const {
  if (tol < 0.0) throw InvalidProbability("tolerance must be nonnegative");
  if (kind_ == Kind::Poisson) return true;  // joint stored as the product, so Delta == 0
  return second_order().max_offdiag_delta() <= tol;
}

namespace {

// C(n, k), saturating just past the support cap so callers can compare.
std::size_t binomial_capped(int n, int k) {
  double count = 1.0;
  for (int i = 0; i < k; ++i) {
    count = count * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (count > static_cast<double>(kMaxEnumeratedSupport) + 0.5) {
      return kMaxEnumeratedSupport + 1;
    }
  }
  return static_cast<std::size_t>(std::llround(count));
}

}  // namespace

bool Design::enumerable() const {
  switch (kind_) {
    case Kind::Enumerated:
      return true;
    case Kind::Poisson:
      return n_units_ <= 20;  // 2^N support fits under kMaxEnumeratedSupport
    case Kind::Srswor:
      return binomial_capped(n_units_, sample_size_) <= kMaxEnumeratedSupport;
  }
  return false;
}

namespace {

// All size-k subsets of {0..n-1} in lexicographic order.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    fn(comb);
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

Design Design::enumerated_form() const {
  switch (kind_) {
    case Kind::Enumerated:
      return *this;
    case Kind::Poisson: {
      if (n_units_ > 20) {
        throw EnumerationTooLarge(std::size_t{1} << std::min(n_units_, 62), kMaxEnumeratedSupport);
      }
      const std::size_t support = std::size_t{1} << n_units_;
      std::vector<std::vector<int>> subsets(support);
      std::vector<double> probs(support);
      for (std::size_t mask = 0; mask < support; ++mask) {
        double p = 1.0;
        auto& subset = subsets[mask];
        for (int i = 0; i < n_units_; ++i) {
          if ((mask >> i) & 1ULL) {
            subset.push_back(i);
            p *= pi_[static_cast<std::size_t>(i)];
          } else {
            p *= 1.0 - pi_[static_cast<std::size_t>(i)];
          }
        }
        probs[mask] = p;
      }
      // Renormalize the tail round-off so the support sums to 1 exactly
      // enough for the construction check.
      const double mass = std::accumulate(probs.begin(), probs.end(), 0.0);
      if (mass > 0.0 && std::abs(mass - 1.0) > 1e-15) {
        for (auto& p : probs) p /= mass;
      }
      return enumerated(n_units_, std::move(subsets), std::move(probs));
    }
    case Kind::Srswor: {
      const std::size_t support = binomial_capped(n_units_, sample_size_);
      if (support > kMaxEnumeratedSupport) {
        throw EnumerationTooLarge(support, kMaxEnumeratedSupport);
      }
      std::vector<std::vector<int>> subsets;
      subsets.reserve(support);
      for_each_combination(n_units_, sample_size_,
                           [&](const std::vector<int>& comb) { subsets.push_back(comb); });
      std::vector<double> probs(subsets.size(), 1.0 / static_cast<double>(subsets.size()));
      return enumerated(n_units_, std::move(subsets), std::move(probs));
    }
  }
  throw Error("unreachable design kind");
}

}  // namespace minimax
