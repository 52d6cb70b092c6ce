#pragma once

#include <cstdint>

namespace minimax {

/// Splittable counter-style generator (SplittableRandom construction):
/// a 64-bit counter advanced by a per-stream odd gamma, finalized with a
/// Stafford mix. A (seed, stream) pair fully determines the output
/// sequence, so replicates keyed by stream index reproduce bit-for-bit
/// no matter how work is scheduled across threads.
///
/// The sequence emitted for a given (seed, stream) is part of the release
/// contract; changing the constants below is a breaking change.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed) ^ mix64(stream + kGolden)),
        gamma_((mix64(stream ^ kGolden) << 1) | 1ULL) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Lemire multiply-shift with
  /// rejection, so the result is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0ULL - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  // Stafford variant 13 of the murmur3 finalizer.
  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace minimax
