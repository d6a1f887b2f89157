#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace orbitframe {

// Seeded generator for randomized checks. Doubles are derived from the raw
// mt19937_64 bit stream (not <random> distributions), so a (seed, call
// sequence) pair produces identical values on every platform and standard
// library. That keeps golden randomized runs reproducible.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

  // Uniform over the square [-r, r]^2 in the complex plane.
  std::complex<double> uniform_complex(double r = 1.0) {
    const double re = uniform(-r, r);
    const double im = uniform(-r, r);
    return {re, im};
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace orbitframe
