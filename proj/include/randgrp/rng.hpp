#pragma once

#include <cstdint>

namespace randgrp {

/// Counter-derived pseudo-random stream (splitmix64).
///
/// Monte-Carlo trials get independent, order-insensitive streams by deriving
/// one generator per trial from (master seed, stream id); the derivation is a
/// pure function, so results do not depend on execution order or thread count.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Strong 64-bit finalizer; bijective on uint64.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Derive the generator for one logical stream (e.g. one Monte-Carlo trial).
  static SplitMix64 for_stream(std::uint64_t master_seed, std::uint64_t stream) {
    return SplitMix64(mix(master_seed ^ 0x9E3779B97F4A7C15ULL) +
                      stream * 0xBF58476D1CE4E5B9ULL);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform draw from {0, ..., bound-1}, exactly unbiased (rejection below
  /// the largest multiple of bound).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

private:
  std::uint64_t state_;
};

} // namespace randgrp
