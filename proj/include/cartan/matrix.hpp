#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Dense row-major matrix. Value type; all operations return new matrices.
template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged rows");
      m.data_.insert(m.data_.end(), row.begin(), row.end());
    }
    return m;
  }

  static Matrix diagonal(std::span<const Scalar> entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<Scalar> row_vector(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  std::vector<Scalar> col_vector(std::size_t j) const {
    std::vector<Scalar> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }
  const std::vector<Scalar>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Copy of the p x q block with top-left corner (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t p, std::size_t q) const {
    if (r0 + p > rows_ || c0 + q > cols_) throw Error(Errc::IndexOutOfRange, "block outside matrix");
    Matrix b(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw Error(Errc::IndexOutOfRange, "block outside matrix");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::vector<Scalar> apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw Error(Errc::DimensionMismatch, "matrix-vector size mismatch");
    std::vector<Scalar> out(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik == Scalar(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using QMatrix = Matrix<Rational>;
using RMatrix = Matrix<double>;

/// Block-diagonal direct sum A ⊕ B.
template <typename Scalar>
Matrix<Scalar> direct_sum(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

inline RMatrix to_double(const QMatrix& m) {
  RMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace cartan
