#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lf/errors.hpp"

namespace lf {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonical text form of an exact rational: "p" when integral, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Dense row-major matrix over an exact scalar (Int or Rat). Entries are
/// never floating point anywhere in this library.
template <typename T>
class Matrix {
 public:
  Matrix() = default;

  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw error(errc::dimension_mismatch, "negative matrix dimension");
  }

  Matrix(int rows, int cols, std::initializer_list<T> entries) : Matrix(rows, cols) {
    if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != entries.size())
      throw error(errc::dimension_mismatch, "entry count does not match shape");
    std::size_t k = 0;
    for (const T& e : entries) data_[k++] = e;
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw error(errc::dimension_mismatch, "matrix product shape mismatch");
    Matrix p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (b == 0) continue;
          p(i, j) += a * b;
        }
      }
    }
    return p;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw error(errc::dimension_mismatch, "matrix sum shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = data_[k] + o.data_[k];
    return s;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw error(errc::dimension_mismatch, "matrix difference shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] = data_[k] - o.data_[k];
    return s;
  }

  bool is_zero() const {
    for (const T& e : data_)
      if (e != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != ((i == j) ? 1 : 0)) return false;
    return true;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  /// row[a] += f * row[b]
  void add_row(int a, int b, const T& f) {
    for (int j = 0; j < cols_; ++j) (*this)(a, j) += f * (*this)(b, j);
  }

  /// col[a] += f * col[b]
  void add_col(int a, int b, const T& f) {
    for (int i = 0; i < rows_; ++i) (*this)(i, a) += f * (*this)(i, b);
  }

  void scale_row(int a, const T& f) {
    for (int j = 0; j < cols_; ++j) (*this)(a, j) *= f;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
      os << (i == 0 ? "[" : " ");
      for (int j = 0; j < cols_; ++j) {
        if (j) os << " ";
        os << (*this)(i, j);
      }
      os << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Int>;
using RationalMatrix = Matrix<Rat>;

inline RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

}  // namespace lf
