#pragma once

#include <cstdint>
#include <random>

namespace confball {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for task `(index, lane)` under `master_seed`. The seed
/// depends only on the three counters, so a replicate sees the same numbers
/// whichever thread runs it.
inline Rng substream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t lane = 0) {
  const std::uint64_t s = mix64(mix64(mix64(master_seed) ^ index) + lane);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(lane)};
  return Rng(seq);
}

}  // namespace confball
