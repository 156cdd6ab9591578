#pragma once

// Umbrella header: Chebyshev-filtered subspace iteration with
// condition-aware QR, plus the synthetic-matrix and experiment harness.

#include "chebsi/blas.hpp"
#include "chebsi/chebyshev.hpp"
#include "chebsi/cholesky.hpp"
#include "chebsi/cond_estimate.hpp"
#include "chebsi/dense_matrix.hpp"
#include "chebsi/experiments.hpp"
#include "chebsi/filter.hpp"
#include "chebsi/hermitian_eig.hpp"
#include "chebsi/householder_qr.hpp"
#include "chebsi/jacobi_svd.hpp"
#include "chebsi/lanczos.hpp"
#include "chebsi/matrix_market.hpp"
#include "chebsi/operator.hpp"
#include "chebsi/qr_engine.hpp"
#include "chebsi/rng.hpp"
#include "chebsi/scalar.hpp"
#include "chebsi/solver.hpp"
#include "chebsi/synth.hpp"
#include "chebsi/trace.hpp"
