#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "chebsi/blas.hpp"
#include "chebsi/chebyshev.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/operator.hpp"

namespace chebsi {

/// Per-column polynomial degrees, nondecreasing so the still-active columns
/// always form a contiguous suffix of the block.
struct DegreeSchedule {
  std::vector<int> degrees;
  bool tau_warning = false;  // set when a Ritz value sat inside the interval

  int max_degree() const {
    return degrees.empty() ? 0 : degrees.back();
  }
  int min_degree() const {
    return degrees.empty() ? 0 : degrees.front();
  }
  bool constant() const {
    return degrees.empty() || degrees.front() == degrees.back();
  }
};

/// Scaled-Chebyshev filter value p_m(lambda) = C_m(t(lambda)) / C_m(t1)
/// evaluated by the same sigma recurrence the block filter uses, with
/// t1 = t(lambda1_est).  Normalization point: p_m(lambda1_est) = 1.
inline double scalar_filter_value(int m, double lambda,
                                  const FilterInterval& iv,
                                  double lambda1_est) {
  assert(m >= 0);
  if (m == 0) return 1.0;
  const double c = iv.center, e = iv.halfwidth;
  const double sigma1 = e / (lambda1_est - c);
  double y_prev = 1.0;
  double y = (sigma1 / e) * (lambda - c);
  double sigma = sigma1;
  for (int i = 2; i <= m; ++i) {
    const double sigma_next = 1.0 / (2.0 / sigma1 - sigma);
    const double y_next =
        2.0 * (sigma_next / e) * (lambda - c) * y - sigma * sigma_next * y_prev;
    y_prev = y;
    y = y_next;
    sigma = sigma_next;
  }
  return y;
}

/// Apply the scaled Chebyshev filter to columns [first_col, V.cols()) of V
/// in place, column a receiving degree degrees[a - first_col].  A column is
/// dropped from the three-term recurrence as soon as its degree is reached,
/// so the operator only ever multiplies the still-active suffix.  Returns
/// the number of single-column operator applications performed.
template <Scalar T>
long long filter_block(const HermitianOperator<T>& A, DenseMatrix<T>& V,
                       std::size_t first_col, const FilterInterval& iv,
                       double lambda1_est, const std::vector<int>& degrees) {
  const std::size_t n = V.rows();
  const std::size_t L = V.cols();
  const std::size_t width = L - first_col;
  assert(degrees.size() == width);
  assert(std::is_sorted(degrees.begin(), degrees.end()));
  assert(A.size() == n);

  const double c = iv.center, e = iv.halfwidth;
  const double t1 = iv.map(lambda1_est);
  assert(t1 <= -1.0);  // normalization point left of the damped interval
  (void)t1;
  const double sigma1 = e / (lambda1_est - c);

  const int mdeg = degrees.empty() ? 0 : degrees.back();
  if (mdeg == 0) return 0;

  // Active suffix for step i starts at the first column with degree >= i.
  auto suffix_start = [&](int step) -> std::size_t {
    return static_cast<std::size_t>(
        std::lower_bound(degrees.begin(), degrees.end(), step) -
        degrees.begin());
  };

  long long matvecs = 0;

  // Step 1: W1 = (sigma1/e) (A - cI) V over columns with degree >= 1.
  std::size_t s = suffix_start(1);
  std::size_t act = width - s;
  DenseMatrix<T> prev = V.sub_cols(first_col + s, act);  // V^(0)
  DenseMatrix<T> cur(n, act);
  {
    const T a1 = T(sigma1 / e);
    const T b1 = T(-sigma1 * c / e);
    for (std::size_t j = 0; j < act; ++j) {
      const T* src = prev.col(j);
      T* dst = cur.col(j);
      for (std::size_t i = 0; i < n; ++i) dst[i] = b1 * src[i];
    }
    A.apply(a1, prev, T(1), cur);
    matvecs += static_cast<long long>(act);
  }
  // Columns with degree exactly 1 are final after step 1.
  auto freeze = [&](int step, std::size_t& start, DenseMatrix<T>& p,
                    DenseMatrix<T>& q) {
    const std::size_t s_next = suffix_start(step + 1);
    if (s_next == start) return;
    const std::size_t drop = s_next - start;
    // Frozen columns keep their value at this step; write them out.
    for (std::size_t j = 0; j < drop; ++j) {
      const T* src = q.col(j);
      T* dst = V.col(first_col + start + j);
      for (std::size_t i = 0; i < n; ++i) dst[i] = src[i];
    }
    const std::size_t act_next = q.cols() - drop;
    p = p.sub_cols(drop, act_next);
    q = q.sub_cols(drop, act_next);
    start = s_next;
  };
  freeze(1, s, prev, cur);
  act = cur.cols();

  double sigma = sigma1;
  DenseMatrix<T> next(n, act);
  for (int step = 2; step <= mdeg; ++step) {
    const double sigma_next = 1.0 / (2.0 / sigma1 - sigma);
    // next = (2 sigma_next / e) (A - cI) cur - sigma*sigma_next * prev
    const T am = T(2.0 * sigma_next / e);
    const T bm = T(-2.0 * sigma_next * c / e);
    const T gm = T(-sigma * sigma_next);
    if (next.cols() != act) next = DenseMatrix<T>(n, act);
    for (std::size_t j = 0; j < act; ++j) {
      const T* pc = prev.col(j);
      const T* cc = cur.col(j);
      T* nc = next.col(j);
      for (std::size_t i = 0; i < n; ++i) nc[i] = bm * cc[i] + gm * pc[i];
    }
    A.apply(am, cur, T(1), next);
    matvecs += static_cast<long long>(act);
    std::swap(prev, cur);
    std::swap(cur, next);
    sigma = sigma_next;
    freeze(step, s, prev, cur);
    act = cur.cols();
  }
  assert(act == 0);
  return matvecs;
}

/// Degree selection from current residuals and per-column damping ratios:
/// the smallest m with res * tau^m <= tol, clamped to [3, max_degree] and
/// repaired to a nondecreasing schedule by a forward max scan.  Ritz values
/// inside the interval cannot converge by filtering; they get max_degree
/// and raise the warning flag.  Callers pass Ritz values ascending.
inline DegreeSchedule choose_degrees(const std::vector<double>& ritz,
                                     const std::vector<double>& residuals,
                                     const FilterInterval& iv, double tol,
                                     int max_degree) {
  assert(ritz.size() == residuals.size());
  constexpr double kTinyResidual = 1e-300;
  DegreeSchedule sched;
  sched.degrees.resize(ritz.size());
  for (std::size_t a = 0; a < ritz.size(); ++a) {
    const double tau = convergence_ratio(iv.map(ritz[a]));
    if (tau >= 1.0) {
      sched.degrees[a] = max_degree;
      sched.tau_warning = true;
      continue;
    }
    const double res = std::max(residuals[a], kTinyResidual);
    const double raw = std::ceil(std::log(tol / res) / std::log(tau));
    int m;
    if (raw >= static_cast<double>(max_degree)) {
      m = max_degree;
    } else if (raw <= 3.0) {
      m = 3;
    } else {
      m = static_cast<int>(raw);
    }
    sched.degrees[a] = m;
  }
  for (std::size_t a = 1; a < sched.degrees.size(); ++a)
    sched.degrees[a] = std::max(sched.degrees[a], sched.degrees[a - 1]);
  return sched;
}

}  // namespace chebsi
