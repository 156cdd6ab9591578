#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chebsi/blas.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/hermitian_eig.hpp"
#include "chebsi/operator.hpp"
#include "chebsi/rng.hpp"

namespace chebsi {

struct SpectralBounds {
  double lower_est = 0.0;   // smallest Ritz value, estimate of the low end
  double inner_edge = 0.0;  // start of the interval to be damped
  double upper_bound = 0.0; // largest Ritz value plus residual norm
  int steps_used = 0;
  int restarts = 0;
};

/// Spectral interval estimation by a short Lanczos run with full
/// reorthogonalization.  upper_bound = theta_max + ||residual||, which in
/// practice dominates the largest eigenvalue; inner_edge places the damped
/// interval at the ell/n spectral-density quantile, clamped to the Ritz
/// value at the quantile position.  Breakdown restarts with a reseeded
/// vector at most three times.
template <Scalar T>
SpectralBounds lanczos_bounds(const HermitianOperator<T>& A, std::size_t ell,
                              int steps, std::uint64_t seed) {
  const std::size_t n = A.size();
  if (n == 0) throw std::invalid_argument("lanczos_bounds: empty operator");
  steps = static_cast<int>(std::min<std::size_t>(steps, n));
  if (steps < 1) steps = 1;

  for (int attempt = 0; attempt <= 3; ++attempt) {
    DenseMatrix<T> V(n, static_cast<std::size_t>(steps) + 1);
    DenseMatrix<T> v(n, 1), w(n, 1);
    NormalRng rng(seed + 0x9e3779b9u * static_cast<std::uint64_t>(attempt));
    rng.fill_normal(v.data(), n);
    double nv = col_norm(v, 0);
    if (nv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) v(i, 0) /= T(nv);
    for (std::size_t i = 0; i < n; ++i) V(i, 0) = v(i, 0);

    std::vector<double> alpha, beta;
    bool broke_down = false;
    double scale = 0.0;
    int j = 0;
    for (; j < steps; ++j) {
      A.apply(T(1), v, T(0), w);
      const double aj = real_part(dot_conj(V.col(j), w.col(0), n));
      alpha.push_back(aj);
      scale = std::max(scale, std::abs(aj));
      // Two passes of reorthogonalization against all previous vectors.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const T h = dot_conj(V.col(i), w.col(0), n);
          const T* vi = V.col(i);
          T* wp = w.col(0);
          for (std::size_t r = 0; r < n; ++r) wp[r] -= vi[r] * h;
        }
      }
      const double bj = col_norm(w, 0);
      beta.push_back(bj);
      if (bj <= 1e3 * kUnitRoundoff * std::max(scale, bj)) {
        broke_down = (j + 1 < steps);
        ++j;
        break;
      }
      scale = std::max(scale, bj);
      for (std::size_t i = 0; i < n; ++i) {
        v(i, 0) = w(i, 0) / T(bj);
        V(i, j + 1) = v(i, 0);
      }
    }
    if (broke_down && attempt < 3) continue;  // reseed and retry

    const int m = j;  // completed steps
    std::vector<double> d(alpha.begin(), alpha.begin() + m);
    std::vector<double> e(m, 0.0);
    for (int i = 0; i + 1 < m; ++i) e[i] = beta[static_cast<std::size_t>(i)];
    DenseMatrix<double> Zempty(0, static_cast<std::size_t>(m));
    tridiag_eig_ql(d, e, Zempty);
    std::sort(d.begin(), d.end());

    SpectralBounds b;
    b.steps_used = m;
    b.restarts = attempt;
    b.lower_est = d.front();
    const double resid = beta.empty() ? 0.0 : beta[static_cast<std::size_t>(m - 1)];
    b.upper_bound = d.back() + resid;
    const double frac =
        std::min(1.0, static_cast<double>(ell) / static_cast<double>(n));
    const double lin = b.lower_est + frac * (d.back() - b.lower_est);
    int qpos = static_cast<int>(std::ceil(frac * m));
    // Never let the quantile position collapse onto the smallest Ritz value:
    // d[0] estimates the low end itself, and a damped interval starting
    // there swallows the wanted eigenvalues along with the rest.
    qpos = std::clamp(qpos, std::min(2, m), m);
    b.inner_edge = std::min(lin, d[static_cast<std::size_t>(qpos - 1)]);
    return b;
  }
  throw std::runtime_error("lanczos_bounds: repeated breakdown");
}

}  // namespace chebsi
