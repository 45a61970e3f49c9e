#pragma once

#include <cmath>
#include <cstdint>

// Counter-based pseudo-random streams. Every deviate is a pure function of
// (seed, stream index), so draws are reproducible under any execution order
// and never depend on how work is scheduled across threads.
namespace spinglass::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// n-th value of the splitmix64 stream seeded with `seed`.
constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t n) {
  return finalize(seed + (n + 1) * kGolden);
}

// Stable hash-combine used to derive sub-seeds (per realization, per
// grid point, ...). Not symmetric in its arguments.
constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return finalize(a ^ (finalize(b) + kGolden + (a << 6) + (a >> 2)));
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform(std::uint64_t seed, std::uint64_t stream) {
  return static_cast<double>(at(seed, stream) >> 11) * 0x1.0p-53;
}

// One standard normal deviate per stream index (Box-Muller, cosine branch;
// the first uniform is mapped into (0, 1] so the log never sees zero).
inline double normal(std::uint64_t seed, std::uint64_t stream) {
  const double u1 =
      static_cast<double>((at(seed, 2 * stream) >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(at(seed, 2 * stream + 1) >> 11) * 0x1.0p-53;
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace spinglass::rng
