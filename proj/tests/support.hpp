// Shared fixtures for the test suite.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "chebsi/chebsi.hpp"

namespace testsup {

// Builds an n x k block with prescribed singular values: U * diag(s) * V^H
// where U (n x k) and V (k x k) come from Householder QR of seeded Gaussian
// draws.  Singular values are log-spaced from 1 down to 1/kappa, so the
// 2-norm condition number of the block is exactly kappa up to rounding.
template <chebsi::Scalar T>
chebsi::DenseMatrix<T> block_with_cond(std::size_t n, std::size_t k,
                                       double kappa, std::uint64_t seed) {
  using chebsi::DenseMatrix;
  DenseMatrix<T> U = DenseMatrix<T>::random_normal(n, k, seed);
  chebsi::householder_orthonormalize(U);
  DenseMatrix<T> V = DenseMatrix<T>::random_normal(k, k, seed + 17);
  chebsi::householder_orthonormalize(V);
  // Scale the columns of U by the singular values, then multiply by V^H.
  for (std::size_t j = 0; j < k; ++j) {
    const double s =
        k == 1 ? 1.0
               : std::exp(-std::log(kappa) * double(j) / double(k - 1));
    for (std::size_t i = 0; i < n; ++i) U(i, j) *= s;
  }
  DenseMatrix<T> X(n, k);
  chebsi::gemm_nn(T(1), U, V.conj_transpose(), T(0), X);
  return X;
}

// Dense Hermitian matrix with a prescribed (sorted ascending) spectrum.
template <chebsi::Scalar T>
chebsi::DenseMatrix<T> matrix_with_spectrum(const std::vector<double>& lam,
                                            std::uint64_t seed) {
  chebsi::MatrixSpec spec;
  spec.n = lam.size();
  spec.kind = chebsi::SpectrumKind::explicit_list;
  spec.values = lam;
  spec.seed = seed;
  return chebsi::gen_matrix<T>(spec);
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

}  // namespace testsup
