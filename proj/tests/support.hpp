#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace testing_support {

// Uniform doubles without relying on the library's distribution
// implementation, so sequences match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::complex<double> in_disk(double radius) {
    for (;;) {
      const std::complex<double> z(uniform(-radius, radius), uniform(-radius, radius));
      if (std::abs(z) < radius) return z;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testing_support
