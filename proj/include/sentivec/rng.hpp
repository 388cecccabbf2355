#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sentivec {

// All randomized code in the library goes through these helpers instead of
// <random> distributions, whose output is implementation-defined. With the
// fully specified mt19937_64 engine underneath, every seeded run is
// reproducible bit for bit on any standard library.

using Rng = std::mt19937_64;

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n). Modulo bias is below 2^-32 for any n that fits
// in memory here; determinism matters more than the last ulp of uniformity.
inline std::size_t bounded(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

template <typename T>
void shuffle_in_place(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = bounded(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace sentivec
