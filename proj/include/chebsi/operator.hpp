#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chebsi/blas.hpp"
#include "chebsi/dense_matrix.hpp"

namespace chebsi {

/// Hermitian operator presented as a block multiply.  The solver only ever
/// needs Y = alpha*A*X + beta*Y; dense storage is optional and used for
/// cheap Hermitian spot checks.
template <Scalar T>
class HermitianOperator {
 public:
  virtual ~HermitianOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(T alpha, const DenseMatrix<T>& X, T beta,
                     DenseMatrix<T>& Y) const = 0;
  virtual const DenseMatrix<T>* dense() const { return nullptr; }
};

template <Scalar T>
class DenseHermitianOperator final : public HermitianOperator<T> {
 public:
  explicit DenseHermitianOperator(DenseMatrix<T> A) : A_(std::move(A)) {}

  std::size_t size() const override { return A_.rows(); }

  void apply(T alpha, const DenseMatrix<T>& X, T beta,
             DenseMatrix<T>& Y) const override {
    gemm_nn(alpha, A_, X, beta, Y);
  }

  const DenseMatrix<T>* dense() const override { return &A_; }

 private:
  DenseMatrix<T> A_;
};

/// Diagonal Hermitian operator; the diagonal is real by definition.
template <Scalar T>
class DiagonalOperator final : public HermitianOperator<T> {
 public:
  explicit DiagonalOperator(std::vector<double> diag) : d_(std::move(diag)) {}

  std::size_t size() const override { return d_.size(); }

  void apply(T alpha, const DenseMatrix<T>& X, T beta,
             DenseMatrix<T>& Y) const override {
    const std::size_t n = d_.size(), k = X.cols();
    scale_inplace(beta, Y);
    for (std::size_t j = 0; j < k; ++j) {
      const T* x = X.col(j);
      T* y = Y.col(j);
      for (std::size_t i = 0; i < n; ++i) y[i] += alpha * T(d_[i]) * x[i];
    }
  }

  const std::vector<double>& diagonal() const { return d_; }

 private:
  std::vector<double> d_;
};

}  // namespace chebsi
