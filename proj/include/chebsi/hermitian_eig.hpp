#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "chebsi/dense_matrix.hpp"
#include "chebsi/householder_qr.hpp"
#include "chebsi/scalar.hpp"

namespace chebsi {

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix.
/// d holds the diagonal (overwritten by the unsorted eigenvalues), e the
/// subdiagonal with e[i] coupling d[i] and d[i+1] (destroyed).  The plane
/// rotations are accumulated into the columns of Z unless Z is empty, so
/// passing the basis that produced (d, e) yields eigenvectors directly.
template <Scalar T>
void tridiag_eig_ql(std::vector<double>& d, std::vector<double>& e,
                    DenseMatrix<T>& Z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  assert(e.size() >= n);
  assert(Z.empty() || Z.cols() == n);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t rows = Z.rows();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 50)
        throw std::runtime_error("tridiag_eig_ql: eigenvalue failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        if (rows > 0) {
          T* zi = Z.col(ii);
          T* zj = Z.col(ii + 1);
          for (std::size_t kk = 0; kk < rows; ++kk) {
            const T fz = zj[kk];
            zj[kk] = T(s) * zi[kk] + T(c) * fz;
            zi[kk] = T(c) * zi[kk] - T(s) * fz;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

template <Scalar T>
struct EigDecomposition {
  std::vector<double> values;  // ascending
  DenseMatrix<T> vectors;      // columns match values
};

/// Dense Hermitian eigendecomposition: Householder tridiagonalization
/// followed by implicit QL, eigenpairs sorted ascending.  The caller
/// provides a Hermitian matrix; only deviations at roundoff level are
/// tolerated.
template <Scalar T>
EigDecomposition<T> hermitian_eig(const DenseMatrix<T>& H) {
  const std::size_t n = H.rows();
  assert(H.cols() == n);
  EigDecomposition<T> out;
  if (n == 0) {
    out.vectors = DenseMatrix<T>(0, 0);
    return out;
  }

  DenseMatrix<T> A = H;
  std::vector<double> d(n, 0.0), e(n, 0.0);
  std::vector<T> tau(n > 1 ? n - 1 : 0, T(0));
  std::vector<T> p(n, T(0));

  // Reduce to real symmetric tridiagonal form; reflector j lives in
  // A(j+2:, j) with an implicit leading 1.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double beta = 0.0;
    detail::make_reflector(A(j + 1, j), n > j + 2 ? &A(j + 2, j) : nullptr,
                           n - j - 2, tau[j], beta);
    e[j] = beta;
    if (tau[j] == T(0)) continue;
    const std::size_t nv = n - j - 1;  // reflector length
    // v[0] = 1, v[i] = A(j+1+i, j)
    auto v = [&](std::size_t i) -> T { return i == 0 ? T(1) : A(j + 1 + i, j); };
    // p = tau * A_sub * v over the trailing block A(j+1:, j+1:)
    for (std::size_t i = 0; i < nv; ++i) p[i] = T(0);
    for (std::size_t c = 0; c < nv; ++c) {
      const T vc = v(c);
      if (vc == T(0)) continue;
      const T* acol = A.col(j + 1 + c) + (j + 1);
      for (std::size_t i = 0; i < nv; ++i) p[i] += acol[i] * vc;
    }
    for (std::size_t i = 0; i < nv; ++i) p[i] *= tau[j];
    // w = p - (tau/2) (p^H v) v
    T dot(0);
    for (std::size_t i = 0; i < nv; ++i) dot += conj_if(p[i]) * v(i);
    const T mu = tau[j] * dot * T(0.5);
    for (std::size_t i = 0; i < nv; ++i) p[i] -= mu * v(i);
    // A_sub -= v w^H + w v^H (rank-2, full storage)
    for (std::size_t c = 0; c < nv; ++c) {
      const T wc = conj_if(p[c]);
      const T vc = conj_if(v(c));
      T* acol = A.col(j + 1 + c) + (j + 1);
      for (std::size_t i = 0; i < nv; ++i)
        acol[i] -= v(i) * wc + p[i] * vc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = real_part(A(i, i));

  // Q = H_0 H_1 ... H_{n-2}, accumulated backward onto the identity.
  DenseMatrix<T> Q = DenseMatrix<T>::identity(n);
  for (std::size_t j = n > 1 ? n - 1 : 0; j-- > 0;) {
    if (tau[j] == T(0)) continue;
    const std::size_t nv = n - j - 1;
    auto v = [&](std::size_t i) -> T { return i == 0 ? T(1) : A(j + 1 + i, j); };
    for (std::size_t c = 0; c < n; ++c) {
      T* qc = Q.col(c) + (j + 1);
      T w(0);
      for (std::size_t i = 0; i < nv; ++i) w += conj_if(v(i)) * qc[i];
      w *= tau[j];
      for (std::size_t i = 0; i < nv; ++i) qc[i] -= v(i) * w;
    }
  }

  tridiag_eig_ql(d, e, Q);

  // Sort ascending, permuting eigenvector columns to match.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  out.values.resize(n);
  out.vectors = DenseMatrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[perm[j]];
    const T* src = Q.col(perm[j]);
    T* dst = out.vectors.col(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
  }
  return out;
}

}  // namespace chebsi
