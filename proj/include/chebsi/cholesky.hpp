#pragma once

#include <cmath>
#include <cstddef>

#include "chebsi/blas.hpp"
#include "chebsi/dense_matrix.hpp"

namespace chebsi {

struct CholeskyResult {
  bool ok = true;
  std::size_t failed_pivot = 0;  // 1-based index of the nonpositive pivot
};

/// In-place Cholesky of a Hermitian positive definite matrix, upper variant:
/// on success R holds U with U^H U = input and zero strict lower triangle.
/// On failure R is left partially factored; failed_pivot reports where the
/// pivot went nonpositive.
template <Scalar T>
CholeskyResult cholesky_upper(DenseMatrix<T>& R) {
  const std::size_t k = R.rows();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      T s = R(i, j);
      for (std::size_t r = 0; r < i; ++r) s -= conj_if(R(r, i)) * R(r, j);
      R(i, j) = s / R(i, i);
    }
    double d = real_part(R(j, j));
    for (std::size_t r = 0; r < j; ++r) d -= abs_sq(R(r, j));
    if (!(d > 0.0)) return {false, j + 1};
    R(j, j) = T(std::sqrt(d));
    for (std::size_t i = j + 1; i < k; ++i) R(i, j) = T(0);
  }
  return {true, 0};
}

}  // namespace chebsi
