#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>

namespace chebsi {

// Seeded normal generator. Box-Muller on top of mt19937_64 instead of
// std::normal_distribution, whose output sequence differs between standard
// library implementations; seeded runs must be bit-identical everywhere.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  void fill_normal(double* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) p[i] = normal();
  }

  // Independent N(0,1) real and imaginary parts.
  void fill_normal(std::complex<double>* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const double re = normal();
      const double im = normal();
      p[i] = {re, im};
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace chebsi
