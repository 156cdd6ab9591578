#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chebsi/jacobi_svd.hpp"
#include "chebsi/solver.hpp"
#include "chebsi/trace.hpp"

namespace chebsi {

/// Solve with the measured condition number of every pre-QR block attached
/// to the trace.  The measurement goes through the one-sided Jacobi oracle,
/// a route fully independent of the estimator under test.
template <Scalar T>
SolveResult<T> solve_with_exact_cond(const HermitianOperator<T>& A,
                                     const SolverConfig& cfg,
                                     const DenseMatrix<T>* guess = nullptr) {
  TraceHook<T> hook = [](IterationTrace& row, const DenseMatrix<T>& block) {
    row.cond_exact = jacobi_svd_cond(block).cond;
  };
  return solve(A, cfg, guess, hook);
}

struct DominanceOutcome {
  int rows_checked = 0;
  int violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // min est/exact
  bool ok() const { return violations == 0; }
};

/// Verify cond_est >= cond_exact on every trace row carrying a measurement.
inline DominanceOutcome check_dominance(
    const std::vector<IterationTrace>& trace) {
  DominanceOutcome out;
  for (const auto& row : trace) {
    if (!row.cond_exact) continue;
    ++out.rows_checked;
    if (!(row.cond_est >= *row.cond_exact)) ++out.violations;
    if (std::isfinite(row.cond_est) && *row.cond_exact > 0)
      out.worst_margin =
          std::min(out.worst_margin, row.cond_est / *row.cond_exact);
  }
  return out;
}

/// Every row choosing the single-pass Cholesky variant must have seen an
/// estimate below the threshold.
inline bool cholqr1_only_below(const std::vector<IterationTrace>& trace,
                               double low_threshold) {
  for (const auto& row : trace)
    if (row.qr_variant == QrVariant::cholqr1 &&
        !(row.cond_est < low_threshold))
      return false;
  return true;
}

template <Scalar T>
struct CompareQrReport {
  SolveResult<T> dynamic_run;
  SolveResult<T> householder_run;
  double norm_scale = 0.0;      // spectral-range proxy for ||A||
  double max_eig_diff = 0.0;
  int iteration_diff = 0;
  double matvec_rel_diff = 0.0;
  bool eigenvalues_equal = false;
  bool iterations_close = false;
  bool matvecs_close = false;
  bool equivalent = false;
};

/// Run the identical configuration under dynamic QR and under
/// Householder-only QR and compare the outcomes; the two routes must agree
/// on the physics and on the work metric.
template <Scalar T>
CompareQrReport<T> run_compare_qr(const HermitianOperator<T>& A,
                                  SolverConfig cfg) {
  CompareQrReport<T> rep;
  cfg.qr_mode = QrMode::dynamic;
  rep.dynamic_run = solve(A, cfg);
  cfg.qr_mode = QrMode::householder_only;
  rep.householder_run = solve(A, cfg);

  rep.norm_scale = std::max(std::abs(rep.dynamic_run.bounds.lower_est),
                            std::abs(rep.dynamic_run.bounds.upper_bound));
  for (std::size_t i = 0; i < rep.dynamic_run.eigenvalues.size(); ++i)
    rep.max_eig_diff = std::max(
        rep.max_eig_diff, std::abs(rep.dynamic_run.eigenvalues[i] -
                                   rep.householder_run.eigenvalues[i]));
  rep.iteration_diff =
      rep.dynamic_run.iterations - rep.householder_run.iterations;
  const double m1 = static_cast<double>(rep.dynamic_run.matvecs);
  const double m2 = static_cast<double>(rep.householder_run.matvecs);
  rep.matvec_rel_diff =
      std::max(m1, m2) > 0 ? std::abs(m1 - m2) / std::max(m1, m2) : 0.0;

  rep.eigenvalues_equal = rep.max_eig_diff <= 1e-9 * rep.norm_scale;
  rep.iterations_close = std::abs(rep.iteration_diff) <= 1;
  rep.matvecs_close = rep.matvec_rel_diff <= 0.01;
  rep.equivalent = rep.eigenvalues_equal && rep.iterations_close &&
                   rep.matvecs_close && rep.dynamic_run.converged_all &&
                   rep.householder_run.converged_all;
  return rep;
}

/// FNV-1a over the 17-digit text of each value: a stable fingerprint of an
/// eigenvalue list.
inline std::string eigenvalues_hash(const std::vector<double>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (const double x : v) {
    const std::string s = fmt_g17(x) + "\n";
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace chebsi
