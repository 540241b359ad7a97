#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeded randomness helpers. Everything funnels through std::mt19937_64 so
// that a (seed, stream) pair reproduces the exact same run on any platform;
// we avoid std::uniform_*_distribution and std::shuffle because their output
// sequences are implementation-defined.
namespace median::rng {

using Engine = std::mt19937_64;

// splitmix64 finalizer; good enough to decorrelate nearby seeds.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent child seed for stream index k (iteration number, trial index...).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  return mix(seed ^ mix(stream));
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform_unit(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound), bound >= 1. Rejection sampling on the
// low-biased region, same scheme PCG uses.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = eng();
    if (r >= threshold) return r % bound;
  }
}

// Standard normal via Box-Muller (cosine branch only; keeps the draw count
// per sample fixed, which keeps generated instances reproducible).
inline double gaussian(Engine& eng) {
  const double u1 = 1.0 - uniform_unit(eng);  // (0, 1], log is safe
  const double u2 = uniform_unit(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Fisher-Yates / Knuth shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace median::rng
