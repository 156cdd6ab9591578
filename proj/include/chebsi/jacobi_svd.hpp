#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "chebsi/blas.hpp"
#include "chebsi/dense_matrix.hpp"

namespace chebsi {

struct SvdCond {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double cond = 0.0;  // +inf for rank-deficient input
  int sweeps = 0;
};

/// Extremal singular values and 2-norm condition number via one-sided
/// Jacobi on the columns.  Chosen over R-based routes because it keeps high
/// relative accuracy in the small singular values, which the condition
/// oracle needs up to cond ~ 1e12.  Invariant under left multiplication by
/// a matrix with orthonormal columns.
template <Scalar T>
SvdCond jacobi_svd_cond(const DenseMatrix<T>& X, int max_sweeps = 60) {
  const std::size_t n = X.rows(), k = X.cols();
  DenseMatrix<T> W = X;
  const double tol = 2.0 * kUnitRoundoff;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        T* wp = W.col(p);
        T* wq = W.col(q);
        double app = 0.0, aqq = 0.0;
        T apq(0);
        for (std::size_t i = 0; i < n; ++i) {
          app += abs_sq(wp[i]);
          aqq += abs_sq(wq[i]);
          apq += conj_if(wp[i]) * wq[i];
        }
        const double g = std::sqrt(abs_sq(apq));
        if (app == 0.0 || aqq == 0.0 || g <= tol * std::sqrt(app * aqq))
          continue;
        rotated = true;
        // Phase-align column q so the coupling is real and positive, then
        // apply the classical symmetric Jacobi rotation for
        // [[app, g], [g, aqq]].  For real input the phase is the sign.
        const T phase = apq / T(g);
        const double zeta = (aqq - app) / (2.0 * g);
        const double t =
            std::copysign(1.0, zeta) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T cp = T(c);
        const T sm = T(s) * phase;         // applied to column q
        const T smc = T(s) * conj_if(phase);
        for (std::size_t i = 0; i < n; ++i) {
          const T a = wp[i];
          const T b = wq[i];
          wp[i] = cp * a - smc * b;
          wq[i] = sm * a + cp * b;
        }
      }
    }
    if (!rotated) break;
  }

  SvdCond r;
  r.sweeps = sweep;
  r.sigma_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    const double s = col_norm(W, j);
    r.sigma_max = std::max(r.sigma_max, s);
    r.sigma_min = std::min(r.sigma_min, s);
  }
  if (k == 0) {
    r.sigma_min = 0.0;
    r.cond = 1.0;
    return r;
  }
  r.cond = r.sigma_min > 0.0
               ? r.sigma_max / r.sigma_min
               : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace chebsi
