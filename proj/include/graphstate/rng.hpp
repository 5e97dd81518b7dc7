#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace graphstate {

/// mt19937_64 wrapper with hand-rolled draws so sampled values depend only on
/// the seed, not on the standard library's distribution implementations.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Poisson draw. Knuth's product method on chunks of the mean, so large
  /// means stay exact (sums of independent Poissons are Poisson).
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_small(30.0);
      mean -= 30.0;
    }
    return total + poisson_small(mean);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double threshold = std::exp(-mean);
    std::uint64_t count = 0;
    double product = uniform01();
    while (product > threshold) {
      ++count;
      product *= uniform01();
    }
    return count;
  }

  std::mt19937_64 engine_;
};

}  // namespace graphstate
