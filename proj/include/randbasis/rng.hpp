#pragma once

#include <cstdint>
#include <random>

namespace randbasis {

/// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Scheduler-independent per-sample stream seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t lane, std::uint64_t index) {
  std::uint64_t s = mix64(base);
  s = mix64(s ^ (0x9E3779B97F4A7C15ull * (lane + 1)));
  s = mix64(s ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return s;
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(mix64(seed)); }

}  // namespace randbasis
