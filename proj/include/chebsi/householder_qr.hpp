#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "chebsi/dense_matrix.hpp"
#include "chebsi/scalar.hpp"

namespace chebsi {

namespace detail {

// Householder reflector H = I - tau*v*v^H with v[0] = 1 such that
// H^H * [alpha; x] = [beta; 0] and beta real. x is scaled in place to the
// reflector tail.  Trivial case (nothing to annihilate) returns tau = 0.
template <Scalar T>
void make_reflector(T& alpha, T* x, std::size_t nx, T& tau, double& beta) {
  double xnorm = 0.0;
  for (std::size_t i = 0; i < nx; ++i) xnorm += abs_sq(x[i]);
  xnorm = std::sqrt(xnorm);
  const double alphr = real_part(alpha);
  double alphi = 0.0;
  if constexpr (is_complex_v<T>) alphi = alpha.imag();
  if (xnorm == 0.0 && alphi == 0.0) {
    tau = T(0);
    beta = alphr;
    return;
  }
  beta = -std::copysign(std::sqrt(alphr * alphr + alphi * alphi + xnorm * xnorm),
                        alphr);
  if constexpr (is_complex_v<T>) {
    tau = T((beta - alphr) / beta, -alphi / beta);
  } else {
    tau = (beta - alphr) / beta;
  }
  const T scale = T(1) / (alpha - T(beta));
  for (std::size_t i = 0; i < nx; ++i) x[i] *= scale;
  alpha = T(beta);
}

}  // namespace detail

template <Scalar T>
struct QrFactor {
  DenseMatrix<T> Q;  // n x k, orthonormal columns
  DenseMatrix<T> R;  // k x k upper triangular, real nonnegative diagonal
};

/// Thin Householder QR of X (n x k, n >= k).  The diagonal of R is made
/// real and nonnegative by a phase transfer into the matching Q column, so
/// the factorization is unique for full-rank X.  Rank-deficient input
/// produces zero rows in R and completes without error.
template <Scalar T>
QrFactor<T> householder_qr(const DenseMatrix<T>& X) {
  const std::size_t n = X.rows(), k = X.cols();
  assert(n >= k);
  DenseMatrix<T> A = X;
  std::vector<T> tau(k, T(0));

  for (std::size_t j = 0; j < k; ++j) {
    double beta = 0.0;
    detail::make_reflector(A(j, j), n > j + 1 ? &A(j + 1, j) : nullptr,
                           n - j - 1, tau[j], beta);
    if (tau[j] == T(0) || j + 1 == k) continue;
    // Apply H^H = I - conj(tau)*v*v^H to the trailing columns.
    for (std::size_t c = j + 1; c < k; ++c) {
      T w = A(j, c);
      for (std::size_t i = j + 1; i < n; ++i) w += conj_if(A(i, j)) * A(i, c);
      w *= conj_if(tau[j]);
      A(j, c) -= w;
      for (std::size_t i = j + 1; i < n; ++i) A(i, c) -= A(i, j) * w;
    }
  }

  QrFactor<T> f;
  f.R = DenseMatrix<T>(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i <= j; ++i) f.R(i, j) = A(i, j);

  // Q = H_0 H_1 ... H_{k-1} restricted to the first k columns, accumulated
  // backward.
  f.Q = DenseMatrix<T>(n, k);
  for (std::size_t j = 0; j < k; ++j) f.Q(j, j) = T(1);
  for (std::size_t j = k; j-- > 0;) {
    if (tau[j] == T(0)) continue;
    for (std::size_t c = 0; c < k; ++c) {
      T w = f.Q(j, c);
      for (std::size_t i = j + 1; i < n; ++i)
        w += conj_if(A(i, j)) * f.Q(i, c);
      w *= tau[j];
      f.Q(j, c) -= w;
      for (std::size_t i = j + 1; i < n; ++i) f.Q(i, c) -= A(i, j) * w;
    }
  }

  // Phase-normalize so diag(R) >= 0.
  for (std::size_t j = 0; j < k; ++j) {
    const T d = f.R(j, j);
    const double ad = std::sqrt(abs_sq(d));
    if (ad == 0.0) continue;
    const T phase = d / T(ad);
    if (phase == T(1)) continue;
    const T ph_conj = conj_if(phase);
    for (std::size_t c = j; c < k; ++c) f.R(j, c) *= ph_conj;
    for (std::size_t i = 0; i < n; ++i) f.Q(i, j) *= phase;
  }
  return f;
}

/// Replace X by the Q factor of its thin QR.
template <Scalar T>
void householder_orthonormalize(DenseMatrix<T>& X) {
  X = householder_qr(X).Q;
}

}  // namespace chebsi
