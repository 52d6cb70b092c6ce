#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minimax {

// Base class for all validation errors raised by the toolkit. The CLI maps
// these to exit code 1; any other exception is an internal error (exit 2).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyPopulation : Error {
  EmptyPopulation() : Error("population has no units") {}
};

struct InvertedInterval : Error {
  explicit InvertedInterval(const std::string& id)
      : Error("unit '" + id + "': lower bound exceeds upper bound") {}
};

struct DuplicateId : Error {
  explicit DuplicateId(const std::string& id) : Error("duplicate unit id '" + id + "'") {}
};

struct LengthMismatch : Error {
  LengthMismatch(const std::string& what, std::size_t got, std::size_t want)
      : Error(what + ": length " + std::to_string(got) + ", expected " + std::to_string(want)) {}
};

struct DegenerateUnit : Error {
  explicit DegenerateUnit(const std::string& id)
      : Error("unit '" + id + "' has zero radius; enable strip_degenerate or fix the bounds") {}
};

struct ZeroInclusion : Error {
  explicit ZeroInclusion(std::size_t index)
      : Error("unit at index " + std::to_string(index + 1) + " has inclusion probability 0") {}
};

struct InvalidProbability : Error {
  using Error::Error;
};

struct EnumerationTooLarge : Error {
  explicit EnumerationTooLarge(std::size_t support, std::size_t cap)
      : Error("enumeration support " + std::to_string(support) + " exceeds cap " +
              std::to_string(cap)) {}
};

struct PopulationTooLarge : Error {
  explicit PopulationTooLarge(std::size_t n, std::size_t cap)
      : Error("population size " + std::to_string(n) + " exceeds vertex-enumeration cap " +
              std::to_string(cap)) {}
};

struct BudgetOutOfRange : Error {
  explicit BudgetOutOfRange(const std::string& detail) : Error("budget out of range: " + detail) {}
};

struct InfeasibleCandidate : Error {
  explicit InfeasibleCandidate(const std::string& detail)
      : Error("infeasible candidate: " + detail) {}
};

struct MissingValue : Error {
  explicit MissingValue(const std::string& unit)
      : Error("sampled unit '" + unit + "' has no observed value") {}
};

struct IndexOutOfRange : Error {
  IndexOutOfRange(long index, std::size_t n)
      : Error("unit index " + std::to_string(index) + " outside 1.." + std::to_string(n)) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NonpositiveScale : Error {
  NonpositiveScale() : Error("affine scale must be positive") {}
};

struct PriorTooLarge : Error {
  explicit PriorTooLarge(const std::string& detail) : Error("prior too large: " + detail) {}
};

struct InvalidPrior : Error {
  explicit InvalidPrior(const std::string& detail) : Error("invalid prior: " + detail) {}
};

struct BiasedChallenger : Error {
  explicit BiasedChallenger(const std::string& detail)
      : Error("challenger estimator is biased: " + detail) {}
};

struct IncompleteProfile : Error {
  explicit IncompleteProfile(const std::string& detail)
      : Error("incomplete vertex-risk profile: " + detail) {}
};

struct FileError : Error {
  explicit FileError(const std::string& detail) : Error(detail) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& detail) : Error(detail) {}
};

}  // namespace minimax
