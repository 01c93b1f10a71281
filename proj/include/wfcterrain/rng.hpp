#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace wfct {

// std::mt19937_64 is fully specified by the standard; the standard
// distributions are not. Draws go through uniform_below so identical
// seeds give identical streams on every platform.

/// Unbiased uniform draw from [0, n). n must be >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % n + 1) % n;
  const std::uint64_t limit = max - rem;
  std::uint64_t v = rng();
  while (v > limit) v = rng();
  return v % n;
}

/// Engine for one generation attempt, derived from (seed, attempt).
inline std::mt19937_64 attempt_engine(std::uint64_t seed, std::uint32_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    attempt};
  return std::mt19937_64(seq);
}

}  // namespace wfct
