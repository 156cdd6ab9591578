#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "chebsi/rng.hpp"
#include "chebsi/scalar.hpp"

namespace chebsi {

/// Column-major dense matrix over binary64 or complex binary64.
/// The scalar kind is part of the type, so mixed-kind operations are
/// rejected at compile time.
template <Scalar T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = T(1);
    return I;
  }

  static DenseMatrix random_normal(std::size_t rows, std::size_t cols,
                                   std::uint64_t seed) {
    DenseMatrix X(rows, cols);
    NormalRng rng(seed);
    rng.fill_normal(X.data(), rows * cols);
    return X;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  T* col(std::size_t j) {
    assert(j < cols_);
    return data_.data() + j * rows_;
  }
  const T* col(std::size_t j) const {
    assert(j < cols_);
    return data_.data() + j * rows_;
  }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i + j * rows_];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i + j * rows_];
  }

  /// Copy of columns [j0, j0 + nc).
  DenseMatrix sub_cols(std::size_t j0, std::size_t nc) const {
    assert(j0 + nc <= cols_);
    DenseMatrix S(rows_, nc);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t i = 0; i < rows_; ++i) S(i, j) = (*this)(i, j0 + j);
    return S;
  }

  /// Paste S into columns [j0, j0 + S.cols()).
  void set_cols(std::size_t j0, const DenseMatrix& S) {
    assert(S.rows() == rows_ && j0 + S.cols() <= cols_);
    for (std::size_t j = 0; j < S.cols(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j0 + j) = S(i, j);
  }

  DenseMatrix conj_transpose() const {
    DenseMatrix H(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) H(j, i) = conj_if((*this)(i, j));
    return H;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

}  // namespace chebsi
