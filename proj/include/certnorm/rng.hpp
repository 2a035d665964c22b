#pragma once

#include <cstdint>
#include <cmath>

// Seeded splitmix-style generator. All randomized routines in the toolkit
// draw from this generator so that results are reproducible across
// platforms without shipping a platform RNG.

namespace certnorm {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [-1, 1).
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  // Sign drawn from the top bit of one 64-bit draw: bit set -> -1.
  int sign() { return (next() >> 63) ? -1 : +1; }

  // Standard normal via Box-Muller (two draws per call, deterministic).
  double gaussian() {
    double u = uniform01();
    double v = uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

 private:
  std::uint64_t state_;
};

// Deterministic sub-stream for (seed, index), used for per-trial and
// per-start generators that may run concurrently.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  return SplitMix64(mixer.next());
}

}  // namespace certnorm
