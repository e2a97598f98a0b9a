#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "jitnet/time.hpp"

namespace jitnet {

// SplitMix64 step. Used to whiten seeds before handing them to the engine.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic engine for substream `stream` of run seed `seed`.
// Distinct streams decorrelate (jitter vs. phase vs. contention draws).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state ^= stream * 0xD1B54A32D192ED03ULL;
  mixed ^= splitmix64(state);
  return std::mt19937_64{mixed};
}

// Uniform integer in [lo, hi] via rejection sampling. Unlike
// std::uniform_int_distribution the output is identical on every platform.
inline Tick uniform_tick(std::mt19937_64& eng, Tick lo, Tick hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<Tick>(eng());  // full 64-bit span
  const std::uint64_t reject = (0 - range) % range;  // 2^64 mod range
  std::uint64_t draw = eng();
  while (reject != 0 && draw > std::numeric_limits<std::uint64_t>::max() - reject) {
    draw = eng();
  }
  return lo + static_cast<Tick>(draw % range);
}

}  // namespace jitnet
