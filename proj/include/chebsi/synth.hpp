#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chebsi/blas.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/householder_qr.hpp"
#include "chebsi/rng.hpp"

namespace chebsi {

enum class SpectrumKind { uniform, clustered_dft, explicit_list };

// All randomness in this header is drawn from a stream decorrelated from
// other consumers of the same user-facing seed.  A solver seeded with the
// matching value fills its start block with the same column-major normal
// draws as the basis below; without the mix its start subspace would be an
// exact invariant subspace of the synthesized matrix and every run would
// lock in the first pass.
inline std::uint64_t synth_stream(std::uint64_t seed) {
  return seed ^ 0x9e3779b97f4a7c15ULL;
}

struct MatrixSpec {
  std::size_t n = 0;
  SpectrumKind kind = SpectrumKind::uniform;
  double lo = 0.0;
  double hi = 1.0;
  double cluster_frac = 0.1;     // clustered_dft: fraction inside the cluster
  std::vector<double> values;    // explicit_list
  std::uint64_t seed = 1;
};

/// Prescribed spectrum, ascending.  uniform: equally spaced over [lo, hi].
/// clustered_dft: round(frac*n) eigenvalues pushed into the lowest decile of
/// the range with the remainder spread over the rest, mimicking the dense
/// low-end clusters of electronic-structure spectra; seeded jitter stays
/// below a tenth of the local spacing so the decile population is exact.
inline std::vector<double> make_spectrum(const MatrixSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("make_spectrum: empty spectrum");
  std::vector<double> lam;
  lam.reserve(n);
  switch (spec.kind) {
    case SpectrumKind::uniform: {
      if (n == 1) {
        lam.push_back(spec.lo);
        break;
      }
      const double step = (spec.hi - spec.lo) / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i)
        lam.push_back(spec.lo + step * static_cast<double>(i));
      break;
    }
    case SpectrumKind::clustered_dft: {
      if (!(spec.hi > spec.lo))
        throw std::invalid_argument("make_spectrum: hi must exceed lo");
      const double w = spec.hi - spec.lo;
      std::size_t k = static_cast<std::size_t>(
          std::llround(spec.cluster_frac * static_cast<double>(n)));
      k = std::clamp<std::size_t>(k, 1, n > 1 ? n - 1 : 1);
      const std::size_t m = n - k;
      NormalRng rng(synth_stream(spec.seed));
      // Cluster occupies [lo, lo + 0.09 w], safely inside the lowest decile.
      const double cspan = 0.09 * w;
      const double cstep = cspan / static_cast<double>(k);
      for (std::size_t i = 0; i < k; ++i) {
        const double jit = (rng.uniform() - 0.5) * 0.2 * cstep;
        lam.push_back(spec.lo + (static_cast<double>(i) + 0.5) * cstep + jit);
      }
      // Remainder spreads over [lo + 0.11 w, hi], safely above the decile.
      const double rlo = spec.lo + 0.11 * w;
      const double rspan = spec.hi - rlo;
      const double rstep = rspan / static_cast<double>(m);
      for (std::size_t i = 0; i < m; ++i) {
        const double jit = (rng.uniform() - 0.5) * 0.2 * rstep;
        lam.push_back(rlo + (static_cast<double>(i) + 0.5) * rstep + jit);
      }
      std::sort(lam.begin(), lam.end());
      break;
    }
    case SpectrumKind::explicit_list: {
      if (spec.values.size() != n)
        throw std::invalid_argument("make_spectrum: value count mismatch");
      lam = spec.values;
      std::sort(lam.begin(), lam.end());
      break;
    }
  }
  return lam;
}

/// Synthesize A = Q diag(lambda) Q^H with Q the orthonormal factor of a
/// seeded normal block, then mirror the triangles so the result is exactly
/// Hermitian as stored.  Same spec, same bits.
template <Scalar T>
DenseMatrix<T> gen_matrix(const MatrixSpec& spec) {
  const std::size_t n = spec.n;
  const std::vector<double> lam = make_spectrum(spec);
  DenseMatrix<T> X = DenseMatrix<T>::random_normal(n, n, synth_stream(spec.seed));
  DenseMatrix<T> Q = householder_qr(X).Q;
  DenseMatrix<T> B = Q;
  for (std::size_t j = 0; j < n; ++j) {
    T* c = B.col(j);
    const T s = T(lam[j]);
    for (std::size_t i = 0; i < n; ++i) c[i] *= s;
  }
  DenseMatrix<T> QH = Q.conj_transpose();
  DenseMatrix<T> A(n, n);
  gemm_nn(T(1), B, QH, T(0), A);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const T avg = (A(i, j) + conj_if(A(j, i))) * T(0.5);
      A(i, j) = avg;
      A(j, i) = conj_if(avg);
    }
    A(j, j) = T(real_part(A(j, j)));
  }
  return A;
}

}  // namespace chebsi
