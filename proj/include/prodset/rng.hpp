#pragma once

#include <cstdint>
#include <random>

namespace prodset {

/// SplitMix64 finalizer; derives independent per-trial seeds from
/// (base seed, stream, index) so results do not depend on scheduling.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t substream_seed(uint64_t base, uint64_t stream, uint64_t index) {
  return mix64(mix64(base ^ mix64(stream)) + index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t base, uint64_t stream, uint64_t index) { return Rng(substream_seed(base, stream, index)); }

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementation.
inline int64_t uniform_int(Rng& rng, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(rng());
  const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int64_t>(x % span);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace prodset
