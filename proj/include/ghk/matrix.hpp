#ifndef GHK_MATRIX_HPP
#define GHK_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/scalar.hpp"

namespace ghk {

/// Dense row-major matrix of Scalars.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Mode mode)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(mode)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw dimension_mismatch("matrix: entry count does not match shape");
  }

  static Matrix identity(std::size_t n, Mode mode) {
    Matrix m(n, n, mode);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(mode);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  Mode mode() const { return data_.empty() ? Mode::exact : data_.front().mode(); }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Entries in row-major order.
  std::span<const Scalar> entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, mode());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix to_mode(Mode m) const {
    std::vector<Scalar> e;
    e.reserve(data_.size());
    for (const auto& s : data_) e.push_back(s.to_mode(m));
    return Matrix(rows_, cols_, std::move(e));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product: inner dimensions differ");
    Matrix r(a.rows_, b.cols_, a.mode());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend std::vector<Scalar> operator*(const Matrix& a, std::span<const Scalar> v) {
    if (a.cols_ != v.size()) throw dimension_mismatch("matrix-vector product: dimensions differ");
    std::vector<Scalar> r(a.rows_, Scalar::zero(a.mode()));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Real bilinear form u^t v = sum u_i v_i (no conjugation).
inline Scalar bilinear(std::span<const Scalar> u, std::span<const Scalar> v) {
  if (u.size() != v.size() || u.empty()) throw dimension_mismatch("bilinear form: dimensions differ");
  Scalar r = Scalar::zero(u.front().mode());
  for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * v[i];
  return r;
}

} // namespace ghk

#endif
