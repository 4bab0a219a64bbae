#pragma once

#include <cstdint>

namespace epw {

/// The single deterministic generator used everywhere; the algorithm identity
/// is pinned by the instance-file format version, so fixtures never drift.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace epw
