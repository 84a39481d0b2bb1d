#pragma once

#include "cohomkit/errors.hpp"
#include "cohomkit/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace cohomkit {

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector row_vector(std::size_t r) const { return IntVector(row(r).begin(), row(r).end()); }
  IntVector column(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVector apply(std::span<const Integer> x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector product");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (x[j] != 0 && (*this)(i, j) != 0) acc += (*this)(i, j) * x[j];
      out[i] = std::move(acc);
    }
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  IntMatrix reduced(const Integer& m) const {
    IntMatrix out = *this;
    for (auto& x : out.data_) x = mod_floor(x, m);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  /// Block of rows [r0, r1) and columns [c0, c1).
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    IntMatrix out(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = (*this)(i, j);
    return out;
  }

  /// Horizontal concatenation [a | b].
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw DimensionMismatch("hstack");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
    }
    return out;
  }

  /// Vertical concatenation.
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_ && !(a.rows_ == 0 || b.rows_ == 0))
      throw DimensionMismatch("vstack");
    std::size_t cols = a.rows_ == 0 ? b.cols_ : a.cols_;
    IntMatrix out(a.rows_ + b.rows_, cols);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < cols; ++j) out(a.rows_ + i, j) = b(i, j);
    return out;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(source, j) != 0) (*this)(target, j) += factor * (*this)(source, j);
  }
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, source) != 0) (*this)(i, target) += factor * (*this)(i, source);
  }
  /// (row a, row b) <- (x*a + y*b, u*a + v*b)
  void combine_rows(std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                    const Integer& u, const Integer& v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Integer ra = (*this)(a, j), rb = (*this)(b, j);
      if (ra == 0 && rb == 0) continue;
      (*this)(a, j) = x * ra + y * rb;
      (*this)(b, j) = u * ra + v * rb;
    }
  }
  /// (col a, col b) <- (x*a + y*b, u*a + v*b)
  void combine_cols(std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                    const Integer& u, const Integer& v) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer ca = (*this)(i, a), cb = (*this)(i, b);
      if (ca == 0 && cb == 0) continue;
      (*this)(i, a) = x * ca + y * cb;
      (*this)(i, b) = u * ca + v * cb;
    }
  }
  void scale_row(std::size_t r, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= f;
  }
  void reduce_row(std::size_t r, const Integer& m) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = mod_floor((*this)(r, j), m);
  }
  void reduce_col(std::size_t c, const Integer& m) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = mod_floor((*this)(i, c), m);
  }

  const std::vector<Integer>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace cohomkit
