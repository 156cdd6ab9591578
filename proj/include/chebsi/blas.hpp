#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "chebsi/dense_matrix.hpp"
#include "chebsi/scalar.hpp"

// Dense kernels. Every reduction runs in a fixed order (k ascending for
// matrix products, row ascending for dot products), so repeated runs on the
// same inputs are bit-identical. Nothing here may reorder sums.

namespace chebsi {

template <Scalar T>
void scale_inplace(T beta, DenseMatrix<T>& C) {
  T* c = C.data();
  const std::size_t sz = C.rows() * C.cols();
  if (beta == T(0)) {
    for (std::size_t i = 0; i < sz; ++i) c[i] = T(0);
  } else if (beta != T(1)) {
    for (std::size_t i = 0; i < sz; ++i) c[i] *= beta;
  }
}

/// C = alpha * A * B + beta * C.  A is n x m, B is m x p, C is n x p.
/// A and B must not alias C.  Panel-blocked over k with four-column register
/// tiles; the i loop is contiguous in both A and C.
template <Scalar T>
void gemm_nn(T alpha, const DenseMatrix<T>& A, const DenseMatrix<T>& B,
             T beta, DenseMatrix<T>& C) {
  const std::size_t n = A.rows(), m = A.cols(), p = B.cols();
  assert(B.rows() == m && C.rows() == n && C.cols() == p);
  assert(A.data() != C.data() && B.data() != C.data());
  scale_inplace(beta, C);
  if (alpha == T(0) || m == 0) return;

  constexpr std::size_t KC = 256;
  for (std::size_t k0 = 0; k0 < m; k0 += KC) {
    const std::size_t k1 = std::min(m, k0 + KC);
    std::size_t j = 0;
    for (; j + 4 <= p; j += 4) {
      T* __restrict__ c0 = C.col(j);
      T* __restrict__ c1 = C.col(j + 1);
      T* __restrict__ c2 = C.col(j + 2);
      T* __restrict__ c3 = C.col(j + 3);
      for (std::size_t k = k0; k < k1; ++k) {
        const T* __restrict__ a = A.col(k);
        const T b0 = alpha * B(k, j);
        const T b1 = alpha * B(k, j + 1);
        const T b2 = alpha * B(k, j + 2);
        const T b3 = alpha * B(k, j + 3);
        for (std::size_t i = 0; i < n; ++i) {
          c0[i] += a[i] * b0;
          c1[i] += a[i] * b1;
          c2[i] += a[i] * b2;
          c3[i] += a[i] * b3;
        }
      }
    }
    for (; j < p; ++j) {
      T* __restrict__ c = C.col(j);
      for (std::size_t k = k0; k < k1; ++k) {
        const T* __restrict__ a = A.col(k);
        const T b = alpha * B(k, j);
        for (std::size_t i = 0; i < n; ++i) c[i] += a[i] * b;
      }
    }
  }
}

/// Dot of columns x and y (x conjugated), r ascending.
template <Scalar T>
T dot_conj(const T* x, const T* y, std::size_t n) {
  T s(0);
  for (std::size_t r = 0; r < n; ++r) s += conj_if(x[r]) * y[r];
  return s;
}

/// C = alpha * A^H * B + beta * C.  A is n x k, B is n x m, C is k x m.
template <Scalar T>
void gemm_cn(T alpha, const DenseMatrix<T>& A, const DenseMatrix<T>& B,
             T beta, DenseMatrix<T>& C) {
  const std::size_t n = A.rows(), k = A.cols(), m = B.cols();
  assert(B.rows() == n && C.rows() == k && C.cols() == m);
  scale_inplace(beta, C);
  if (alpha == T(0)) return;
  for (std::size_t j = 0; j < m; ++j) {
    const T* bj = B.col(j);
    for (std::size_t i = 0; i < k; ++i)
      C(i, j) += alpha * dot_conj(A.col(i), bj, n);
  }
}

/// Gram matrix X^H X, exactly Hermitian as stored: the strict lower triangle
/// is the bitwise conjugate mirror of the upper one and the diagonal is real.
template <Scalar T>
DenseMatrix<T> gram(const DenseMatrix<T>& X) {
  const std::size_t n = X.rows(), k = X.cols();
  DenseMatrix<T> G(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const T g = dot_conj(X.col(i), X.col(j), n);
      G(i, j) = g;
      G(j, i) = conj_if(g);
    }
    G(j, j) = T(real_part(dot_conj(X.col(j), X.col(j), n)));
  }
  return G;
}

/// X <- X * U^{-1} with U upper triangular (right triangular solve).
template <Scalar T>
void solve_upper_right(DenseMatrix<T>& X, const DenseMatrix<T>& U) {
  const std::size_t n = X.rows(), k = X.cols();
  assert(U.rows() == k && U.cols() == k);
  for (std::size_t j = 0; j < k; ++j) {
    T* __restrict__ xj = X.col(j);
    for (std::size_t i = 0; i < j; ++i) {
      const T u = U(i, j);
      if (u == T(0)) continue;
      const T* __restrict__ xi = X.col(i);
      for (std::size_t r = 0; r < n; ++r) xj[r] -= xi[r] * u;
    }
    const T d = T(1) / U(j, j);
    for (std::size_t r = 0; r < n; ++r) xj[r] *= d;
  }
}

template <Scalar T>
double frobenius_norm(const DenseMatrix<T>& X) {
  double s = 0.0;
  const T* p = X.data();
  const std::size_t sz = X.rows() * X.cols();
  for (std::size_t i = 0; i < sz; ++i) s += abs_sq(p[i]);
  return std::sqrt(s);
}

template <Scalar T>
double col_norm(const DenseMatrix<T>& X, std::size_t j) {
  double s = 0.0;
  const T* p = X.col(j);
  for (std::size_t i = 0; i < X.rows(); ++i) s += abs_sq(p[i]);
  return std::sqrt(s);
}

template <Scalar T>
double max_abs(const DenseMatrix<T>& X) {
  double m = 0.0;
  const T* p = X.data();
  const std::size_t sz = X.rows() * X.cols();
  for (std::size_t i = 0; i < sz; ++i) m = std::max(m, std::sqrt(abs_sq(p[i])));
  return m;
}

/// || Q^H Q - I ||_F, the standard loss-of-orthogonality measure.
template <Scalar T>
double orthogonality_error(const DenseMatrix<T>& Q) {
  DenseMatrix<T> G = gram(Q);
  for (std::size_t i = 0; i < G.cols(); ++i) G(i, i) -= T(1);
  return frobenius_norm(G);
}

}  // namespace chebsi
