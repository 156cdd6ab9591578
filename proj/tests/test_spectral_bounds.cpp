// Chebyshev scalar identities and the Lanczos interval estimator.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support.hpp"

using namespace chebsi;

namespace {

bool close(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace

TEST_CASE("chebyshev recurrence hand values") {
  CHECK(cheb_scalar(0, 0.3) == 1.0);
  CHECK(cheb_scalar(1, 0.3) == 0.3);
  CHECK(cheb_scalar(2, 2.0) == 7.0);    // 2*2*2 - 1
  CHECK(cheb_scalar(3, 2.0) == 26.0);   // 2*2*7 - 2
  CHECK(close(cheb_scalar(5, -1.0), -1.0, 1e-15));
}

TEST_CASE("chebyshev growth matches (rho^m + rho^-m)/2 outside the interval") {
  for (double t : {1.001, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const double rho = rho_of(t);
    for (int m = 0; m <= 40; ++m) {
      const double expected =
          0.5 * (std::pow(rho, m) + std::pow(rho, -m));
      REQUIRE(close(cheb_scalar(m, t), expected, 1e-10));
      // Negative argument only flips the sign with the parity of m.
      const double neg = cheb_scalar(m, -t);
      REQUIRE(close(std::abs(neg), expected, 1e-10));
    }
  }
}

TEST_CASE("chebyshev stays bounded by one on the interval") {
  for (int i = 0; i <= 100; ++i) {
    const double t = -1.0 + 0.02 * i;
    for (int m = 0; m <= 50; ++m)
      REQUIRE(std::abs(cheb_scalar(m, t)) <= 1.0 + 1e-10);
  }
}

TEST_CASE("rho_of closed-form values") {
  CHECK(close(rho_of(-2.0), 2.0 + std::sqrt(3.0), 1e-15));
  CHECK(close(rho_of(3.0), 3.0 + std::sqrt(8.0), 1e-15));
  CHECK(rho_of(1.0) == 1.0);
  CHECK(rho_of(-1.0) == 1.0);
  CHECK(rho_of(0.3) == 1.0);
  CHECK(rho_of(0.0) == 1.0);
}

TEST_CASE("rho_of is stable just outside the interval edge") {
  const double t = 1.0 + 1e-15;
  const double r = rho_of(t);
  CHECK(std::isfinite(r));
  CHECK(r >= 1.0);
  // sqrt((a-1)(a+1)) form: no cancellation, so the tiny excess survives.
  CHECK(r > 1.0);
}

TEST_CASE("convergence ratio is the reciprocal growth rate") {
  for (double t : {-5.05, -2.0, 1.5, 3.0, 10.0}) {
    CHECK(close(convergence_ratio(t) * rho_of(t), 1.0, 1e-15));
  }
  CHECK(close(convergence_ratio(-5.05), 0.1, 1e-13));
  CHECK(convergence_ratio(0.7) == 1.0);
}

TEST_CASE("filter interval maps its edges onto -1 and 1") {
  const FilterInterval iv = FilterInterval::from_edges(3.0, 11.0);
  CHECK(iv.center == 7.0);
  CHECK(iv.halfwidth == 4.0);
  CHECK(iv.map(3.0) == -1.0);
  CHECK(iv.map(11.0) == 1.0);
  CHECK(iv.alpha() == 3.0);
  CHECK(iv.beta() == 11.0);
}

TEST_CASE("lanczos bounds bracket diag(1..100)") {
  std::vector<double> d(100);
  for (int i = 0; i < 100; ++i) d[static_cast<std::size_t>(i)] = i + 1.0;
  const DiagonalOperator<double> A(d);
  const SpectralBounds b = lanczos_bounds(A, 10, 25, 7);
  CHECK(b.steps_used == 25);
  CHECK(b.restarts == 0);
  CHECK(b.upper_bound >= 100.0);
  CHECK(b.upper_bound <= 200.0);       // theta_max + residual stays sane
  CHECK(b.lower_est >= 1.0 - 1e-9);    // Ritz values interlace the spectrum
  CHECK(b.lower_est <= 15.0);
  CHECK(b.inner_edge > b.lower_est);
  CHECK(b.inner_edge < b.upper_bound);
  // ell/n = 0.1: the damped interval starts in the lower part of the range.
  CHECK(b.inner_edge <= 1.0 + 0.11 * (b.upper_bound - 1.0));
}

TEST_CASE("lanczos upper bound dominates the spectrum across seeds") {
  std::vector<double> d(100);
  for (int i = 0; i < 100; ++i) d[static_cast<std::size_t>(i)] = i + 1.0;
  const DiagonalOperator<double> A(d);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull, 12345ull}) {
    const SpectralBounds b = lanczos_bounds(A, 10, 25, seed);
    REQUIRE(b.upper_bound >= 100.0 - 1e-8);
  }
}

TEST_CASE("lanczos handles immediate breakdown on the identity") {
  std::vector<double> d(50, 1.0);
  const DiagonalOperator<double> A(d);
  const SpectralBounds b = lanczos_bounds(A, 5, 25, 3);
  // Every start vector is an eigenvector: one step, reseeds exhausted.
  CHECK(b.steps_used == 1);
  CHECK(b.restarts == 3);
  CHECK(close(b.lower_est, 1.0, 1e-12));
  CHECK(close(b.upper_bound, 1.0, 1e-10));
}

TEST_CASE("lanczos caps the step count at the operator size") {
  std::vector<double> d = {1.0, 2.0, 3.0, 4.0};
  const DiagonalOperator<double> A(d);
  const SpectralBounds b = lanczos_bounds(A, 2, 25, 5);
  CHECK(b.steps_used <= 4);
  CHECK(b.upper_bound >= 4.0 - 1e-9);
  CHECK(b.lower_est >= 1.0 - 1e-9);
}

TEST_CASE("lanczos bounds work on a dense synthetic matrix") {
  const std::vector<double> lam = testsup::linspace(-5.0, 20.0, 120);
  const RealMatrix A = testsup::matrix_with_spectrum<double>(lam, 17);
  const DenseHermitianOperator<double> op(A);
  const SpectralBounds b = lanczos_bounds(op, 12, 25, 9);
  CHECK(b.upper_bound >= 20.0 - 1e-6);
  CHECK(b.lower_est >= -5.0 - 1e-6);
  CHECK(b.lower_est <= 0.0);  // 25 steps resolve the low edge well
}
