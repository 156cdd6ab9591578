// QR regimes on blocks with prescribed condition numbers, the threshold
// logic of the dynamic selection, and the failure escalation path.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support.hpp"

using namespace chebsi;
using C = std::complex<double>;

namespace {

// Verify Q spans the same column space as X: || X - Q (Q^H X) || small.
template <Scalar T>
double range_loss(const DenseMatrix<T>& X, const DenseMatrix<T>& Q) {
  DenseMatrix<T> P(Q.cols(), X.cols());
  gemm_cn(T(1), Q, X, T(0), P);
  DenseMatrix<T> R(X.rows(), X.cols());
  gemm_nn(T(1), Q, P, T(0), R);
  double err = 0.0;
  for (std::size_t j = 0; j < X.cols(); ++j)
    for (std::size_t i = 0; i < X.rows(); ++i)
      err = std::max(err, std::sqrt(abs_sq(R(i, j) - X(i, j))));
  return err / frobenius_norm(X);
}

}  // namespace

TEST_CASE("cholqr2 restores orthogonality through kappa = 1e6") {
  for (double kappa : {1e2, 1e4, 1e6}) {
    RealMatrix X = testsup::block_with_cond<double>(500, 60, kappa, 11);
    const RealMatrix X0 = X;
    const QrChoice ch = apply_qr_variant(X, QrVariant::cholqr2, kappa);
    REQUIRE(ch.cholesky_failures == 0);
    REQUIRE(ch.variant == QrVariant::cholqr2);
    CHECK(orthogonality_error(X) <= 1e-13 * std::sqrt(60.0));
    CHECK(range_loss(X0, X) <= 1e-9);
  }
}

TEST_CASE("shifted cholqr2 survives kappa up to 1e10") {
  for (double kappa : {1e8, 1e9, 1e10}) {
    RealMatrix X = testsup::block_with_cond<double>(500, 60, kappa, 13);
    const QrChoice ch =
        apply_qr_variant(X, QrVariant::shifted_cholqr2, kappa);
    REQUIRE(ch.cholesky_failures == 0);
    REQUIRE(ch.variant == QrVariant::shifted_cholqr2);
    CHECK(ch.shift_applied > 0.0);
    CHECK(orthogonality_error(X) <= 1e-12 * std::sqrt(60.0));
  }
}

TEST_CASE("shifted cholqr2 works on complex blocks") {
  ComplexMatrix X = testsup::block_with_cond<C>(400, 40, 1e9, 15);
  const QrChoice ch = apply_qr_variant(X, QrVariant::shifted_cholqr2, 1e9);
  REQUIRE(ch.cholesky_failures == 0);
  CHECK(orthogonality_error(X) <= 1e-12 * std::sqrt(40.0));
}

TEST_CASE("cholqr1 fails at kappa = 1e9 and escalates to householder") {
  RealMatrix X = testsup::block_with_cond<double>(500, 60, 1e9, 17);
  const QrChoice ch = apply_qr_variant(X, QrVariant::cholqr1, 1e9);
  CHECK(ch.cholesky_failures == 1);
  CHECK(ch.variant == QrVariant::householder);
  // The escalation still produced an orthonormal block.
  CHECK(orthogonality_error(X) <= 1e-12 * std::sqrt(60.0));
}

TEST_CASE("cholqr1 suffices on a nearly orthonormal block") {
  RealMatrix X = testsup::block_with_cond<double>(300, 30, 2.0, 19);
  const QrChoice ch = apply_qr_variant(X, QrVariant::cholqr1, 2.0);
  REQUIRE(ch.cholesky_failures == 0);
  REQUIRE(ch.variant == QrVariant::cholqr1);
  CHECK(orthogonality_error(X) <= 1e-13 * std::sqrt(30.0));
}

TEST_CASE("dynamic selection pins the documented thresholds") {
  // The same well-conditioned block under three claimed estimates: the
  // branch must follow the estimate, not the data.
  const RealMatrix X0 = testsup::block_with_cond<double>(200, 20, 3.0, 23);

  RealMatrix X = X0;
  QrChoice ch = dynamic_caqr(X, 1e9);
  CHECK(ch.variant == QrVariant::shifted_cholqr2);
  CHECK(ch.est_cond_used == 1e9);

  X = X0;
  ch = dynamic_caqr(X, 10.0);
  CHECK(ch.variant == QrVariant::cholqr1);

  X = X0;
  ch = dynamic_caqr(X, 1e5);
  CHECK(ch.variant == QrVariant::cholqr2);
}

TEST_CASE("dynamic selection respects custom thresholds") {
  const RealMatrix X0 = testsup::block_with_cond<double>(200, 20, 3.0, 29);
  QrOptions opts;
  opts.high_threshold = 1e3;
  opts.low_threshold = 50.0;
  RealMatrix X = X0;
  CHECK(dynamic_caqr(X, 1e4, opts).variant == QrVariant::shifted_cholqr2);
  X = X0;
  CHECK(dynamic_caqr(X, 40.0, opts).variant == QrVariant::cholqr1);
  X = X0;
  CHECK(dynamic_caqr(X, 500.0, opts).variant == QrVariant::cholqr2);
}

TEST_CASE("infinite estimate takes the conservative shifted branch") {
  RealMatrix X = testsup::block_with_cond<double>(200, 20, 3.0, 31);
  const QrChoice ch =
      dynamic_caqr(X, std::numeric_limits<double>::infinity());
  CHECK(ch.variant == QrVariant::shifted_cholqr2);
  CHECK(orthogonality_error(X) <= 1e-12 * std::sqrt(20.0));
}

TEST_CASE("rank-deficient block escalates to householder") {
  RealMatrix X = RealMatrix::random_normal(100, 5, 37);
  for (std::size_t i = 0; i < 100; ++i) X(i, 4) = X(i, 3);  // exact copy
  const QrChoice ch = dynamic_caqr(X, 5.0);  // claims cholqr1 territory
  CHECK(ch.cholesky_failures == 1);
  CHECK(ch.variant == QrVariant::householder);
  // Householder completes even without full rank; the block is orthonormal
  // in its leading columns and finite everywhere.
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 100; ++i) REQUIRE(std::isfinite(X(i, j)));
}

TEST_CASE("qr engine is deterministic") {
  const RealMatrix X0 = testsup::block_with_cond<double>(300, 25, 1e8, 41);
  RealMatrix X1 = X0, X2 = X0;
  dynamic_caqr(X1, 1e8 + 1.0);
  dynamic_caqr(X2, 1e8 + 1.0);
  CHECK(X1 == X2);
}

TEST_CASE("shift magnitude follows the row, column and norm scaling") {
  RealMatrix X(1000, 50);
  for (std::size_t j = 0; j < 50; ++j) X(j, j) = 1.0;
  const double s = cholqr_shift(X);
  const double expected =
      11.0 * (1000.0 * 50.0 + 50.0 * 51.0) * kUnitRoundoff *
      std::sqrt(50.0);
  CHECK(s == expected);
}

TEST_CASE("forced householder mode reports its variant") {
  RealMatrix X = testsup::block_with_cond<double>(150, 15, 1e4, 43);
  const QrChoice ch = apply_qr_variant(X, QrVariant::householder, 1e4);
  CHECK(ch.variant == QrVariant::householder);
  CHECK(ch.cholesky_failures == 0);
  CHECK(orthogonality_error(X) <= 1e-13 * std::sqrt(15.0));
}

TEST_CASE("variant names are stable") {
  CHECK(std::string(to_string(QrVariant::cholqr1)) == "cholqr1");
  CHECK(std::string(to_string(QrVariant::cholqr2)) == "cholqr2");
  CHECK(std::string(to_string(QrVariant::shifted_cholqr2)) ==
        "shifted_cholqr2");
  CHECK(std::string(to_string(QrVariant::householder)) == "householder");
}
