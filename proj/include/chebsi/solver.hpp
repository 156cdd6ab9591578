#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chebsi/blas.hpp"
#include "chebsi/chebyshev.hpp"
#include "chebsi/cond_estimate.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/filter.hpp"
#include "chebsi/hermitian_eig.hpp"
#include "chebsi/lanczos.hpp"
#include "chebsi/operator.hpp"
#include "chebsi/qr_engine.hpp"
#include "chebsi/rng.hpp"
#include "chebsi/trace.hpp"

namespace chebsi {

enum class QrMode { dynamic, householder_only, forced };

struct SolverConfig {
  std::size_t nev = 0;
  std::size_t nex = 0;
  double tol = 1e-10;
  int base_degree = 20;
  int max_degree = 36;
  bool degree_opt = true;
  EtaMode eta_mode = EtaMode::one;
  int max_iterations = 50;
  int lanczos_steps = 25;
  std::uint64_t seed = 1;
  QrMode qr_mode = QrMode::dynamic;
  QrVariant forced_variant = QrVariant::householder;
  QrOptions qr_options{};
  std::optional<SpectralBounds> bounds_override;
};

template <Scalar T>
struct SolveResult {
  std::vector<double> eigenvalues;   // first nev Ritz values, ascending
  DenseMatrix<T> eigenvectors;       // n x nev
  std::size_t converged = 0;         // locked pairs on exit
  bool converged_all = false;
  int iterations = 0;                // passes executed, initial QR included
  long long matvecs = 0;             // filter column multiplies
  std::vector<IterationTrace> trace;
  std::vector<double> final_residuals;   // recomputed after the loop
  double locked_stability_max = 0.0;     // worst locked residual at exit
  SpectralBounds bounds;
  double wall_seconds = 0.0;
  double qr_seconds = 0.0;
};

/// Called once per pass with the trace row under construction and the block
/// as it enters the QR step; used by the harness to attach the measured
/// condition number.
template <Scalar T>
using TraceHook =
    std::function<void(IterationTrace&, const DenseMatrix<T>&)>;

namespace detail {

template <Scalar T>
void check_hermitian_sampled(const DenseMatrix<T>& H) {
  const std::size_t n = H.rows();
  const double scale = frobenius_norm(H);
  const double tol = 1e-12 * (scale > 0 ? scale : 1.0);
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  const std::size_t samples = std::min<std::size_t>(4 * n, 256);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = next() % n;
    const std::size_t j = next() % n;
    const T diff = H(i, j) - conj_if(H(j, i));
    if (std::sqrt(abs_sq(diff)) > tol)
      throw std::invalid_argument("solve: operator is not Hermitian");
  }
}

}  // namespace detail

/// Chebyshev-filtered subspace iteration with contiguous locking: filter the
/// active columns, re-orthonormalize the whole block with a condition-aware
/// QR, Rayleigh-Ritz on the active part, lock converged leading pairs, and
/// repeat until the first nev pairs converge.  Pass 0 is the QR and
/// Rayleigh-Ritz of the starting block itself.
template <Scalar T>
SolveResult<T> solve(const HermitianOperator<T>& A, const SolverConfig& cfg,
                     const DenseMatrix<T>* initial_guess = nullptr,
                     const TraceHook<T>& hook = {}) {
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t n = A.size();
  const std::size_t nev = cfg.nev, nex = cfg.nex, ell = nev + nex;
  if (nev == 0) throw std::invalid_argument("solve: nev must be positive");
  if (ell > n) throw std::invalid_argument("solve: nev + nex exceeds order");
  if (cfg.tol <= 0) throw std::invalid_argument("solve: tol must be positive");
  if (cfg.max_degree < cfg.base_degree || cfg.base_degree < 1)
    throw std::invalid_argument("solve: bad degree limits");
  if (const DenseMatrix<T>* H = A.dense()) detail::check_hermitian_sampled(*H);

  SolveResult<T> out;
  double qr_seconds = 0.0;

  // Starting block: caller columns first, seeded normal fill for the rest.
  DenseMatrix<T> V(n, ell);
  std::size_t given = 0;
  if (initial_guess && !initial_guess->empty()) {
    if (initial_guess->rows() != n)
      throw std::invalid_argument("solve: initial guess row mismatch");
    given = std::min(initial_guess->cols(), ell);
    for (std::size_t j = 0; j < given; ++j)
      for (std::size_t i = 0; i < n; ++i) V(i, j) = (*initial_guess)(i, j);
  }
  if (given < ell) {
    NormalRng rng(cfg.seed);
    rng.fill_normal(V.col(given), n * (ell - given));
  }

  out.bounds = cfg.bounds_override
                   ? *cfg.bounds_override
                   : lanczos_bounds(A, ell, cfg.lanczos_steps,
                                    cfg.seed ^ 0x9e3779b97f4a7c15ull);

  std::vector<double> ritz(ell, 0.0);
  std::vector<double> res_active;
  std::size_t locked = 0;
  long long matvecs = 0;

  DenseMatrix<T> W, AW, M, S, R;

  auto run_qr = [&](double est_cond) -> QrChoice {
    const auto t0 = std::chrono::steady_clock::now();
    QrChoice ch;
    switch (cfg.qr_mode) {
      case QrMode::dynamic:
        ch = dynamic_caqr(V, est_cond, cfg.qr_options);
        break;
      case QrMode::householder_only:
        ch = apply_qr_variant(V, QrVariant::householder, est_cond);
        break;
      case QrMode::forced:
        ch = apply_qr_variant(V, cfg.forced_variant, est_cond);
        break;
    }
    qr_seconds += std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return ch;
  };

  // Rayleigh-Ritz plus residuals on the active trailing block; the locked
  // prefix is never touched.
  auto rayleigh_ritz = [&]() {
    const std::size_t act = ell - locked;
    W = V.sub_cols(locked, act);
    AW = DenseMatrix<T>(n, act);
    A.apply(T(1), W, T(0), AW);
    M = DenseMatrix<T>(act, act);
    gemm_cn(T(1), W, AW, T(0), M);
    // Exact Hermitian projection of the small matrix.
    for (std::size_t j = 0; j < act; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const T avg = (M(i, j) + conj_if(M(j, i))) * T(0.5);
        M(i, j) = avg;
        M(j, i) = conj_if(avg);
      }
      M(j, j) = T(real_part(M(j, j)));
    }
    EigDecomposition<T> eig = hermitian_eig(M);
    S = std::move(eig.vectors);
    DenseMatrix<T> VS(n, act);
    gemm_nn(T(1), W, S, T(0), VS);
    V.set_cols(locked, VS);
    for (std::size_t j = 0; j < act; ++j) ritz[locked + j] = eig.values[j];
    // Residuals: A(WS) - theta(WS) evaluated as (AW)S - theta WS.
    R = DenseMatrix<T>(n, act);
    gemm_nn(T(1), AW, S, T(0), R);
    res_active.assign(act, 0.0);
    for (std::size_t j = 0; j < act; ++j) {
      const T* v = VS.col(j);
      T* r = R.col(j);
      const T th = T(eig.values[j]);
      for (std::size_t i = 0; i < n; ++i) r[i] -= th * v[i];
      const double vn = col_norm(VS, j);
      res_active[j] = col_norm(R, j) / (vn > 0 ? vn : 1.0);
    }
  };

  int iter = 0;
  for (; iter <= cfg.max_iterations; ++iter) {
    IterationTrace row;
    row.iter = iter;
    DegreeSchedule schedule;
    CondEstimate est;
    double lambda1_est = 0.0;

    if (iter == 0) {
      // No filter has run yet: no estimate exists, so the trace carries the
      // +inf sentinel and dynamic QR takes its conservative branch.
      est.bound = std::numeric_limits<double>::infinity();
      row.cond_est = est.bound;
    } else {
      const double alpha =
          iter == 1 ? out.bounds.inner_edge : ritz[ell - 1];
      const double beta = out.bounds.upper_bound;
      if (!(beta > alpha))
        throw std::runtime_error("solve: degenerate filter interval");
      const FilterInterval iv = FilterInterval::from_edges(alpha, beta);
      lambda1_est = iter == 1 ? out.bounds.lower_est : ritz[0];
      if (lambda1_est >= alpha) {
        // Keep the normalization point strictly left of the interval.
        lambda1_est = alpha - std::max(1e-12 * (beta - alpha), 1e-300);
      }
      const std::size_t act = ell - locked;
      if (!cfg.degree_opt || iter == 1) {
        schedule.degrees.assign(act, cfg.base_degree);
      } else {
        const std::vector<double> ritz_act(ritz.begin() + locked, ritz.end());
        schedule =
            choose_degrees(ritz_act, res_active, iv, cfg.tol, cfg.max_degree);
      }
      // The filter normalizes at the deepest eigenvalue estimate among the
      // columns it actually touches.  With a locked prefix that is the first
      // active Ritz value: anchoring deeper (at ritz[0]) would shrink every
      // filtered column by (rho_next/rho_1)^m relative to the unit-norm
      // locked columns, and the pre-QR block would then be conditioned like
      // rho_1^m — worse than the locked-regime bound models.
      double anchor = locked == 0 ? lambda1_est : ritz[locked];
      if (anchor >= alpha) {
        anchor = alpha - std::max(1e-12 * (beta - alpha), 1e-300);
      }
      matvecs += filter_block(A, V, locked, iv, anchor, schedule.degrees);

      bool eta_capped = false;
      double eta = 1.0;
      if (cfg.eta_mode == EtaMode::formula) {
        const double rho_ell = rho_of(iv.map(ritz[ell - 1]));
        eta = eta_factor(EtaMode::formula, rho_ell, schedule.max_degree(),
                         &eta_capped);
      }
      if (locked > 0) {
        est = estimate_locked(iv, lambda1_est, ritz[locked], locked, schedule,
                              eta);
      } else if (schedule.constant()) {
        est = estimate_uniform(iv, lambda1_est, schedule.max_degree(), eta);
      } else {
        est = estimate_optimized(iv, lambda1_est, schedule, eta);
      }
      est.eta_capped = eta_capped;
      row.cond_est = est.bound;
      row.deg_min = schedule.min_degree();
      row.deg_max = schedule.max_degree();
    }

    if (hook) hook(row, V);  // V is the pre-QR block [locked | filtered]

    const QrChoice ch = run_qr(est.bound);
    row.qr_variant = ch.variant;
    if (ch.variant == QrVariant::shifted_cholqr2)
      row.shift = ch.shift_applied;

    rayleigh_ritz();

    const std::size_t locked_before = locked;
    std::size_t scan = locked;
    while (scan < nev && res_active[scan - locked_before] < cfg.tol) ++scan;
    locked = scan;

    row.locked = locked;
    row.res_max = *std::max_element(res_active.begin(), res_active.end());
    row.res_min = *std::min_element(res_active.begin(), res_active.end());
    row.matvecs = matvecs;
    out.trace.push_back(row);

    // Keep res_active aligned with the still-active columns [locked, ell).
    res_active.erase(res_active.begin(),
                     res_active.begin() +
                         static_cast<std::ptrdiff_t>(locked - locked_before));

    if (locked >= nev) break;
  }

  out.converged = locked;
  out.converged_all = locked >= nev;
  out.iterations = static_cast<int>(out.trace.size());
  out.matvecs = matvecs;
  out.eigenvalues.assign(ritz.begin(), ritz.begin() + nev);
  out.eigenvectors = V.sub_cols(0, nev);

  // Post-hoc verification: fresh residuals for the returned pairs.
  DenseMatrix<T> AX(n, nev);
  A.apply(T(1), out.eigenvectors, T(0), AX);
  out.final_residuals.assign(nev, 0.0);
  for (std::size_t j = 0; j < nev; ++j) {
    T* r = AX.col(j);
    const T* v = out.eigenvectors.col(j);
    const T th = T(out.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) r[i] -= th * v[i];
    const double vn = col_norm(out.eigenvectors, j);
    out.final_residuals[j] = col_norm(AX, j) / (vn > 0 ? vn : 1.0);
  }
  for (std::size_t j = 0; j < out.converged && j < nev; ++j)
    out.locked_stability_max =
        std::max(out.locked_stability_max, out.final_residuals[j]);

  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
  out.qr_seconds = qr_seconds;
  return out;
}

}  // namespace chebsi
