#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lprl {

/// Deterministic RNG used everywhere in the project. Wraps std::mt19937_64
/// (whose output sequence is pinned by the standard) and implements its own
/// distributions, since the std distribution algorithms are
/// implementation-defined and would break cross-compiler reproducibility.
class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Uses rejection sampling to avoid modulo bias.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  /// Standard normal via Box-Muller (both values used, cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  /// Child stream with a decorrelated seed; used to give each worker its own
  /// independent, reproducible sequence.
  Rng spawn(std::uint64_t stream_id) const {
    return Rng(mix(mix(base_seed_mixin_, stream_id + 1), 0x9e3779b97f4a7c15ull));
  }

  static Rng seeded(std::uint64_t seed) {
    Rng r(mix(seed, 0xd1b54a32d192ed03ull));
    r.base_seed_mixin_ = seed;
    return r;
  }

  /// SplitMix64 finalizer; good avalanche for seed derivation.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t base_seed_mixin_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace lprl
