#pragma once

#include <cstdint>

namespace wiso {

/// SplitMix64 generator. A stream is fully determined by its 64-bit key, and
/// split() derives independent child keys, so per-case streams depend only on
/// (seed, case index) and not on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  /// Child stream for index k; does not advance this stream.
  Rng split(std::uint64_t k) const noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

 private:
  std::uint64_t state_;
};

/// The SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace wiso
