#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "chebsi/chebyshev.hpp"
#include "chebsi/filter.hpp"

namespace chebsi {

enum class EtaMode { one, formula };
enum class CondRegime { uniform, optimized, locked };

inline const char* to_string(CondRegime r) {
  switch (r) {
    case CondRegime::uniform: return "uniform";
    case CondRegime::optimized: return "optimized";
    case CondRegime::locked: return "locked";
  }
  return "?";
}

/// Upper-bound estimate of the condition number of the filtered block that
/// enters the QR step.  All evaluation happens in log space; bounds past
/// 1e300 collapse to the +inf sentinel, which every consumer treats as
/// "worse than any threshold".
struct CondEstimate {
  double bound = 1.0;
  double eta = 1.0;
  double rho_first = 1.0;                    // ratio at the lambda_1 estimate
  std::optional<double> rho_after_lock;      // ratio at theta_{k+1}
  int degree_max = 0;                        // m_ell
  std::optional<int> degree_after_lock;      // m_{k+1}
  std::size_t locked = 0;
  CondRegime regime = CondRegime::uniform;
  bool eta_capped = false;
  bool lock_edge_warning = false;  // theta_{k+1} sat inside the interval
};

/// Normalization factor eta relating the filter bound to the condition
/// number.  mode one fixes eta = 1 (the production default, exact at
/// rho_ell^m = 1 + sqrt(2)); mode formula evaluates
/// (x + 1) / (x (x - 1)) with x = rho_ell^{m_ell}, valid for x > 1, and is
/// capped at 1e8 when x grazes 1 from above.
inline double eta_factor(EtaMode mode, double rho_ell, int m_ell,
                         bool* capped = nullptr) {
  if (capped) *capped = false;
  if (mode == EtaMode::one) return 1.0;
  const double x = std::exp(static_cast<double>(m_ell) * std::log(rho_ell));
  if (!(x > 1.0 + 1e-8)) {
    if (capped) *capped = true;
    return 1e8;
  }
  return (x + 1.0) / (x * (x - 1.0));
}

namespace detail {

inline constexpr double kLogOverflow = 690.77552789821368;  // ln(1e300)

inline CondEstimate cond_core(double eta, double rho_first, int m_ell,
                              CondRegime regime) {
  CondEstimate est;
  est.eta = eta;
  est.rho_first = rho_first;
  est.degree_max = m_ell;
  est.regime = regime;
  const double log_bound =
      std::log(eta) + static_cast<double>(m_ell) * std::log(rho_first);
  est.bound = log_bound > kLogOverflow
                  ? std::numeric_limits<double>::infinity()
                  : std::exp(log_bound);
  return est;
}

}  // namespace detail

/// Uniform-degree regime: bound = eta * rho(lambda_1)^m.
inline CondEstimate estimate_uniform(const FilterInterval& iv,
                                     double lambda1_est, int m, double eta) {
  return detail::cond_core(eta, rho_of(iv.map(lambda1_est)), m,
                           CondRegime::uniform);
}

/// Optimized-degree regime before any locking: the largest degree in the
/// schedule governs the bound.  A constant schedule reproduces
/// estimate_uniform bitwise.
inline CondEstimate estimate_optimized(const FilterInterval& iv,
                                       double lambda1_est,
                                       const DegreeSchedule& schedule,
                                       double eta) {
  CondEstimate est = detail::cond_core(
      eta, rho_of(iv.map(lambda1_est)), schedule.max_degree(),
      CondRegime::optimized);
  return est;
}

/// Locked regime: with k pairs deflated the dominant surviving component is
/// theta_{k+1}, filtered at degree m_{k+1}; the remaining degree gap still
/// amplifies at rho_1.  bound = eta * rho_{k+1}^{m_{k+1}} * rho_1^{m_ell -
/// m_{k+1}}.  locked == 0 delegates to estimate_optimized bitwise; a
/// theta_{k+1} inside the interval falls back likewise with a warning.
inline CondEstimate estimate_locked(const FilterInterval& iv,
                                    double lambda1_est, double theta_next,
                                    std::size_t locked,
                                    const DegreeSchedule& schedule,
                                    double eta) {
  if (locked == 0) return estimate_optimized(iv, lambda1_est, schedule, eta);
  const double rho1 = rho_of(iv.map(lambda1_est));
  const double rho2 = rho_of(iv.map(theta_next));
  const int m_ell = schedule.max_degree();
  const int m_next = schedule.min_degree();
  if (!(rho2 > 1.0)) {
    CondEstimate est = estimate_optimized(iv, lambda1_est, schedule, eta);
    est.locked = locked;
    est.lock_edge_warning = true;
    return est;
  }
  CondEstimate est;
  est.eta = eta;
  est.rho_first = rho1;
  est.rho_after_lock = rho2;
  est.degree_max = m_ell;
  est.degree_after_lock = m_next;
  est.locked = locked;
  est.regime = CondRegime::locked;
  const double log_bound = std::log(eta) +
                           static_cast<double>(m_next) * std::log(rho2) +
                           static_cast<double>(m_ell - m_next) * std::log(rho1);
  est.bound = log_bound > detail::kLogOverflow
                  ? std::numeric_limits<double>::infinity()
                  : std::exp(log_bound);
  return est;
}

}  // namespace chebsi
