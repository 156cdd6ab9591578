// Condition-bound estimator: closed forms, regime delegation identities,
// the eta normalization and overflow handling.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "support.hpp"

using namespace chebsi;

namespace {

bool close(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

const FilterInterval kUnit = FilterInterval::from_edges(-1.0, 1.0);

}  // namespace

TEST_CASE("uniform bound matches the closed form (2+sqrt3)^20") {
  // lambda_1 = -2 maps to t = -2, rho = 2 + sqrt(3); with eta = 1 and
  // degree 20 the bound is rho^20 = 2.7475838227...e11.
  const CondEstimate est = estimate_uniform(kUnit, -2.0, 20, 1.0);
  const double rho = 2.0 + std::sqrt(3.0);
  CHECK(close(est.bound, std::pow(rho, 20), 1e-12));
  CHECK(close(est.bound, 2.7475838227e11, 1e-9));
  CHECK(est.regime == CondRegime::uniform);
  CHECK(est.degree_max == 20);
  CHECK(close(est.rho_first, rho, 1e-15));
}

TEST_CASE("uniform bound scales the eta factor linearly") {
  const CondEstimate e1 = estimate_uniform(kUnit, -2.0, 10, 1.0);
  const CondEstimate e2 = estimate_uniform(kUnit, -2.0, 10, 2.5);
  CHECK(close(e2.bound, 2.5 * e1.bound, 1e-12));
}

TEST_CASE("optimized bound with a constant schedule equals uniform bitwise") {
  DegreeSchedule s;
  s.degrees = {20, 20, 20, 20};
  const CondEstimate opt = estimate_optimized(kUnit, -2.0, s, 1.0);
  const CondEstimate uni = estimate_uniform(kUnit, -2.0, 20, 1.0);
  CHECK(opt.bound == uni.bound);  // same arithmetic, same bits
  CHECK(opt.regime == CondRegime::optimized);
}

TEST_CASE("optimized bound follows the largest degree in the schedule") {
  DegreeSchedule s;
  s.degrees = {5, 10, 36};
  const CondEstimate est = estimate_optimized(kUnit, -2.0, s, 1.0);
  const double rho = 2.0 + std::sqrt(3.0);
  CHECK(close(est.bound, std::exp(36.0 * std::log(rho)), 1e-12));
  CHECK(est.degree_max == 36);
}

TEST_CASE("locked bound with zero locked delegates to optimized bitwise") {
  DegreeSchedule s;
  s.degrees = {8, 12, 20};
  const CondEstimate lock = estimate_locked(kUnit, -2.0, -1.5, 0, s, 1.0);
  const CondEstimate opt = estimate_optimized(kUnit, -2.0, s, 1.0);
  CHECK(lock.bound == opt.bound);
  CHECK(lock.regime == CondRegime::optimized);
}

TEST_CASE("locked bound matches the two-factor closed form") {
  // theta_next = -1.5 maps to rho2 = 1.5 + sqrt(1.25); lambda_1 = -2 maps
  // to rho1 = 2 + sqrt(3).  Degrees {20, ..., 30}: bound =
  // rho2^20 * rho1^10.
  DegreeSchedule s;
  s.degrees = {20, 24, 30};
  const CondEstimate est = estimate_locked(kUnit, -2.0, -1.5, 3, s, 1.0);
  const double rho1 = 2.0 + std::sqrt(3.0);
  const double rho2 = 1.5 + std::sqrt(1.25);
  const double expected =
      std::exp(20.0 * std::log(rho2) + 10.0 * std::log(rho1));
  CHECK(close(est.bound, expected, 1e-12));
  CHECK(est.regime == CondRegime::locked);
  CHECK(est.locked == 3);
  REQUIRE(est.rho_after_lock.has_value());
  CHECK(close(*est.rho_after_lock, rho2, 1e-15));
  CHECK(est.degree_after_lock == 20);
  CHECK_FALSE(est.lock_edge_warning);
}

TEST_CASE("locked bound never exceeds the uniform bound at equal degree") {
  // rho2 <= rho1, so substituting rho2 for part of the exponent range can
  // only shrink the product.
  DegreeSchedule s;
  s.degrees = {10, 15, 25};
  const CondEstimate lock = estimate_locked(kUnit, -3.0, -1.8, 2, s, 1.0);
  const CondEstimate uni = estimate_uniform(kUnit, -3.0, 25, 1.0);
  CHECK(lock.bound <= uni.bound * (1.0 + 1e-12));
}

TEST_CASE("theta_next inside the interval falls back with a warning") {
  DegreeSchedule s;
  s.degrees = {10, 20};
  const CondEstimate est = estimate_locked(kUnit, -2.0, 0.3, 4, s, 1.0);
  const CondEstimate opt = estimate_optimized(kUnit, -2.0, s, 1.0);
  CHECK(est.lock_edge_warning);
  CHECK(est.bound == opt.bound);
  CHECK(est.locked == 4);
}

TEST_CASE("eta mode one is exactly one") {
  bool capped = true;
  CHECK(eta_factor(EtaMode::one, 5.0, 30, &capped) == 1.0);
  CHECK_FALSE(capped);
}

TEST_CASE("eta formula at x = 2 gives 1.5") {
  // (x + 1) / (x (x - 1)) with x = rho^m = 2.
  CHECK(close(eta_factor(EtaMode::formula, 2.0, 1, nullptr), 1.5, 1e-14));
}

TEST_CASE("eta formula crosses one exactly at x = 1 + sqrt(2)") {
  const double x = 1.0 + std::sqrt(2.0);
  CHECK(close(eta_factor(EtaMode::formula, x, 1, nullptr), 1.0, 1e-12));
  // Below the crossing eta exceeds one, above it eta is below one.
  CHECK(eta_factor(EtaMode::formula, x - 0.1, 1, nullptr) > 1.0);
  CHECK(eta_factor(EtaMode::formula, x + 0.1, 1, nullptr) < 1.0);
}

TEST_CASE("eta formula caps when the growth factor grazes one") {
  bool capped = false;
  const double eta = eta_factor(EtaMode::formula, 1.0, 36, &capped);
  CHECK(capped);
  CHECK(eta == 1e8);
}

TEST_CASE("bound overflows to the infinity sentinel") {
  const CondEstimate est = estimate_uniform(kUnit, -2.0, 600, 1.0);
  CHECK(std::isinf(est.bound));
  CHECK(est.bound > 0);
}

TEST_CASE("bound just below the overflow knee stays finite") {
  // ln rho = ln(2 + sqrt 3) = 1.3169...; 500 * ln rho = 658.5 < ln 1e300.
  const CondEstimate est = estimate_uniform(kUnit, -2.0, 500, 1.0);
  CHECK(std::isfinite(est.bound));
  CHECK(est.bound > 1e285);
}

TEST_CASE("degenerate normalization point collapses the bound to eta") {
  // lambda_1 on the interval edge: rho = 1, so the bound is eta itself.
  const CondEstimate est = estimate_uniform(kUnit, -1.0, 20, 1.0);
  CHECK(est.bound == 1.0);
}

TEST_CASE("regime names are stable") {
  CHECK(std::string(to_string(CondRegime::uniform)) == "uniform");
  CHECK(std::string(to_string(CondRegime::optimized)) == "optimized");
  CHECK(std::string(to_string(CondRegime::locked)) == "locked");
}
