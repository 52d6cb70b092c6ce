#pragma once

#include <cstdint>
#include <vector>

#include "minimax/errors.hpp"

namespace minimax {

/// First-order inclusion probabilities, one per unit, each in (0, 1].
using InclusionProbabilities = std::vector<double>;

/// Throws InvalidProbability unless every entry is in (0, 1].
void validate_inclusion_probabilities(const InclusionProbabilities& pi);

/// Exact pairwise inclusion probabilities pi_ij with the covariance matrix
/// Delta_ij = pi_ij - pi_i pi_j. Diagonal convention: pi_ii = pi_i and
/// Delta_ii = pi_i (1 - pi_i); risk formulas only use off-diagonal entries.
class SecondOrderMatrix {
 public:
  SecondOrderMatrix(std::vector<double> pi, std::vector<double> joint_row_major);

  int units() const { return n_; }
  double pi(int i) const { return pi_[static_cast<std::size_t>(i)]; }
  double joint(int i, int j) const { return joint_[idx(i, j)]; }
  double delta(int i, int j) const;
  double max_offdiag_delta() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }
  int n_;
  std::vector<double> pi_;
  std::vector<double> joint_;
};

/// Listed-support designs larger than this are rejected; it also caps the
/// expansion of Poisson/SRSWOR designs to enumerated form.
inline constexpr std::size_t kMaxEnumeratedSupport = std::size_t{1} << 20;

/// A sampling design: a probability distribution over subsets of the unit
/// index space {0..N-1}. Three concrete kinds, all with exact first- and
/// second-order inclusion probabilities:
///   Enumerated — explicit (subset, probability) list;
///   Poisson    — independent Bernoulli(pi_i) per unit;
///   Srswor     — simple random sampling without replacement, fixed size k.
/// Immutable; draw() takes the RNG coordinates explicitly, so concurrent
/// drawing just uses distinct streams.
class Design {
 public:
  enum class Kind { Enumerated, Poisson, Srswor };

  /// Subsets are 0-based, within 0..n_units-1; probabilities must be
  /// nonnegative and sum to 1 within 1e-12; every unit needs pi_i > 0.
  static Design enumerated(int n_units, std::vector<std::vector<int>> subsets,
                           std::vector<double> probabilities);
  static Design poisson(InclusionProbabilities pi);
  static Design srswor(int n_units, int sample_size);

  Kind kind() const { return kind_; }
  int units() const { return n_units_; }

  const InclusionProbabilities& first_order() const { return pi_; }
  SecondOrderMatrix second_order() const;
  double expected_size() const;

  /// Draws one subset, returned as sorted 0-based indices. Deterministic
  /// given (seed, stream): Poisson consumes one uniform per unit in unit
  /// order; SRSWOR runs a k-step partial Fisher-Yates shuffle; Enumerated
  /// inverts the CDF over the listed order.
  std::vector<int> draw(std::uint64_t seed, std::uint64_t stream) const;

  /// True iff max_offdiag |Delta_ij| <= tol. Poisson designs satisfy this
  /// at tol = 0 exactly.
  bool pairwise_independent(double tol) const;

  bool enumerable() const;

  /// Expands to an Enumerated design over the full support (identity for
  /// Enumerated). Throws EnumerationTooLarge past kMaxEnumeratedSupport.
  Design enumerated_form() const;

  // Enumerated-kind access (empty for the closed-form kinds).
  const std::vector<std::vector<int>>& subsets() const { return subsets_; }
  const std::vector<double>& probabilities() const { return probs_; }
  int fixed_sample_size() const { return sample_size_; }

 private:
  Design() = default;

  Kind kind_ = Kind::Enumerated;
  int n_units_ = 0;
  int sample_size_ = 0;  // SRSWOR only
  InclusionProbabilities pi_;
  std::vector<std::vector<int>> subsets_;
  std::vector<double> probs_;
};

}  // namespace minimax
