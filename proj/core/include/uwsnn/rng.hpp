#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Deterministic randomness helpers. std::shuffle and
// std::uniform_int_distribution are implementation-defined, so every shuffle
// and bounded draw in this project goes through these instead: outputs must
// be identical across standard libraries and platforms.

namespace uwsnn {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Derives an independent sub-seed from (seed, stream, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ index);
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform draw in [0, n). Modulo bias is irrelevant here; determinism is not.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace uwsnn
