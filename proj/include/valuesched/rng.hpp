#pragma once

#include <cstdint>

namespace valuesched {

// Deterministic 64-bit generator (SplitMix64). All randomness in the
// project flows through this type so that results are reproducible
// bit-for-bit across platforms and thread counts. The standard library
// distributions are avoided on purpose: their output is not portable
// across implementations.
//
// Independent streams are derived with stream(seed, a, b); the engine
// uses one stream per (generation, subproblem), the harness one per
// (cell, variant). Streams derived from distinct (a, b) pairs do not
// collide in practice.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}

  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng r(0);
    r.state_ = mix(mix(mix(seed) ^ a) ^ b);
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool next_bool(double p) { return next_double() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace valuesched
