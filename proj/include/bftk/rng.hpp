#pragma once

#include <cstdint>

namespace bftk {

/// SplitMix64: the fixed, portable generator behind every seeded campaign.
/// Streams are split per sample index, so results do not depend on the
/// worker count.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound) by rejection-free multiply-shift; bound
  /// must be nonzero. Bias is negligible for the desk-scale bounds used
  /// here but we keep the 128-bit path exact anyway.
  uint64_t below(uint64_t bound) {
    return uint64_t((__uint128_t(next()) * bound) >> 64);
  }
};

/// Independent stream for sample `index` of a campaign seeded with `seed`.
inline SplitMix64 split_stream(uint64_t seed, uint64_t index) {
  SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mixer.next();
  return mixer;
}

}  // namespace bftk
