#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "chebsi/blas.hpp"
#include "chebsi/cholesky.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/householder_qr.hpp"

namespace chebsi {

enum class QrVariant { cholqr1, cholqr2, shifted_cholqr2, householder };

inline const char* to_string(QrVariant v) {
  switch (v) {
    case QrVariant::cholqr1: return "cholqr1";
    case QrVariant::cholqr2: return "cholqr2";
    case QrVariant::shifted_cholqr2: return "shifted_cholqr2";
    case QrVariant::householder: return "householder";
  }
  return "?";
}

/// Condition thresholds steering the variant choice; kept configurable so
/// they can be swept by the harness.
struct QrOptions {
  double high_threshold = 1e8;  // above: shifted CholeskyQR2
  double low_threshold = 20.0;  // below: single-pass CholeskyQR
};

struct QrChoice {
  QrVariant variant = QrVariant::cholqr2;
  double est_cond_used = 0.0;
  double shift_applied = 0.0;   // nonzero only when the shifted pass ran
  int cholesky_failures = 0;    // a single failure escalates to Householder
};

/// chol_deg rounds of {Gram, Cholesky, triangular solve}.  Returns false at
/// the first Cholesky failure, leaving X partially processed; callers keep
/// a copy if they need to escalate.
template <Scalar T>
bool cholesky_qr(DenseMatrix<T>& X, int chol_deg,
                 std::size_t* failed_pivot = nullptr) {
  for (int round = 0; round < chol_deg; ++round) {
    DenseMatrix<T> G = gram(X);
    const CholeskyResult cr = cholesky_upper(G);
    if (!cr.ok) {
      if (failed_pivot) *failed_pivot = cr.failed_pivot;
      return false;
    }
    solve_upper_right(X, G);
  }
  return true;
}

/// Shift magnitude for the stabilized first pass: 11(mn + n(n+1)) u ||X||_F
/// with m rows and n columns.
template <Scalar T>
double cholqr_shift(const DenseMatrix<T>& X) {
  const double m = static_cast<double>(X.rows());
  const double n = static_cast<double>(X.cols());
  return 11.0 * (m * n + n * (n + 1.0)) * kUnitRoundoff * frobenius_norm(X);
}

/// Shifted CholeskyQR2: one shifted pass to tame the conditioning, then a
/// plain CholeskyQR2 to restore orthogonality.  Any Cholesky failure falls
/// back to Householder on the original block.
template <Scalar T>
QrChoice shifted_cholesky_qr2(DenseMatrix<T>& X) {
  QrChoice ch;
  ch.variant = QrVariant::shifted_cholqr2;
  const DenseMatrix<T> original = X;
  const double s = cholqr_shift(X);
  DenseMatrix<T> G = gram(X);
  for (std::size_t i = 0; i < G.cols(); ++i) G(i, i) += T(s);
  const CholeskyResult cr = cholesky_upper(G);
  bool ok = cr.ok;
  if (ok) {
    solve_upper_right(X, G);
    ok = cholesky_qr(X, 2);
  }
  if (!ok) {
    ch.cholesky_failures = 1;
    ch.variant = QrVariant::householder;
    X = original;
    householder_orthonormalize(X);
    return ch;
  }
  ch.shift_applied = s;
  return ch;
}

/// Condition-driven variant selection: very ill conditioned blocks take the
/// shifted route, nearly orthonormal ones a single Cholesky pass, everything
/// else CholeskyQR2.  A +inf estimate lands in the shifted branch.  Cholesky
/// failures escalate to Householder so the call always orthonormalizes.
template <Scalar T>
QrChoice dynamic_caqr(DenseMatrix<T>& X, double est_cond,
                      const QrOptions& opts = {}) {
  QrChoice ch;
  ch.est_cond_used = est_cond;
  if (est_cond > opts.high_threshold) {
    const double keep = est_cond;
    ch = shifted_cholesky_qr2(X);
    ch.est_cond_used = keep;
    return ch;
  }
  const int chol_deg = est_cond < opts.low_threshold ? 1 : 2;
  ch.variant = chol_deg == 1 ? QrVariant::cholqr1 : QrVariant::cholqr2;
  const DenseMatrix<T> original = X;
  if (!cholesky_qr(X, chol_deg)) {
    ch.cholesky_failures = 1;
    ch.variant = QrVariant::householder;
    X = original;
    householder_orthonormalize(X);
  }
  return ch;
}

/// Run one fixed variant (harness override path); Cholesky failures still
/// escalate to Householder so the result is always orthonormal.
template <Scalar T>
QrChoice apply_qr_variant(DenseMatrix<T>& X, QrVariant forced,
                          double est_cond) {
  QrChoice ch;
  ch.est_cond_used = est_cond;
  switch (forced) {
    case QrVariant::householder:
      ch.variant = QrVariant::householder;
      householder_orthonormalize(X);
      return ch;
    case QrVariant::shifted_cholqr2: {
      ch = shifted_cholesky_qr2(X);
      ch.est_cond_used = est_cond;
      return ch;
    }
    case QrVariant::cholqr1:
    case QrVariant::cholqr2: {
      const int deg = forced == QrVariant::cholqr1 ? 1 : 2;
      ch.variant = forced;
      const DenseMatrix<T> original = X;
      if (!cholesky_qr(X, deg)) {
        ch.cholesky_failures = 1;
        ch.variant = QrVariant::householder;
        X = original;
        householder_orthonormalize(X);
      }
      return ch;
    }
  }
  return ch;
}

}  // namespace chebsi
