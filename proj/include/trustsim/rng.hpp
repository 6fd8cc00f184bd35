#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace trustsim {

/**
 * Seeded random source used by every stochastic operation.
 *
 * Backed by std::mt19937_64, whose output sequence is fixed by the standard.
 * The std distributions are implementation-defined, so uniform doubles and
 * bounded integers are derived here directly from the raw 64-bit words. Given
 * the same seed, every platform sees the same stream.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Reject the low (2^64 mod bound) values so the modulo is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace trustsim
