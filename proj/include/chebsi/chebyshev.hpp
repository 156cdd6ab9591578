#pragma once

#include <cassert>
#include <cmath>

namespace chebsi {

/// Interval [alpha, beta] of unwanted spectrum mapped onto [-1, 1] by
/// t = (lambda - center) / halfwidth.
struct FilterInterval {
  double center = 0.0;
  double halfwidth = 1.0;

  static FilterInterval from_edges(double alpha, double beta) {
    assert(beta > alpha);
    return {0.5 * (alpha + beta), 0.5 * (beta - alpha)};
  }

  double map(double lambda) const { return (lambda - center) / halfwidth; }
  double alpha() const { return center - halfwidth; }
  double beta() const { return center + halfwidth; }
};

/// Chebyshev polynomial of the first kind by forward three-term recurrence.
inline double cheb_scalar(int m, double t) {
  assert(m >= 0);
  if (m == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int i = 2; i <= m; ++i) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Magnitude of the growing branch |t + sqrt(t^2 - 1)| for |t| > 1, and 1 on
/// the interval itself.  (|t|-1)(|t|+1) avoids the cancellation in t^2 - 1
/// near the edges; the decaying branch is its reciprocal.
inline double rho_of(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  return a + std::sqrt((a - 1.0) * (a + 1.0));
}

/// Per-degree damping ratio of an eigenvalue mapped to t: tau = 1/rho <= 1,
/// with equality exactly on the filtered interval.
inline double convergence_ratio(double t) { return 1.0 / rho_of(t); }

}  // namespace chebsi
