#pragma once

// Exact integer and rational linear algebra. Machine integers are used only
// with overflow checks; an overflow throws instead of wrapping.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace symcorr {

class ArithmeticOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

namespace detail {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticOverflow("int64 overflow in addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw ArithmeticOverflow("int64 overflow in subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticOverflow("int64 overflow in multiplication");
  return r;
}
template <class T> T add(const T &a, const T &b) { return a + b; }
template <class T> T sub(const T &a, const T &b) { return a - b; }
template <class T> T mul(const T &a, const T &b) { return a * b; }

} // namespace detail

/// Dense row-major matrix over int64 (checked), mpz_class or mpq_class.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  bool is_zero() const {
    for (const auto &x : data_)
      if (x != 0)
        return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
      t = detail::add(t, (*this)(i, i));
    return t;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using ZMatrix = Matrix<mpz_class>;
using QMatrix = Matrix<mpq_class>;

template <class T> Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0)
          c(i, j) = detail::add(c(i, j), detail::mul(aik, b(k, j)));
    }
  return c;
}

template <class T> Matrix<T> operator+(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = detail::add(a(i, j), b(i, j));
  return c;
}

template <class T> Matrix<T> operator-(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference shape mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = detail::sub(a(i, j), b(i, j));
  return c;
}

template <class T> Matrix<T> scaled(const Matrix<T> &a, const T &s) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      c(i, j) = detail::mul(a(i, j), s);
  return c;
}

ZMatrix to_z(const IntMatrix &m);
QMatrix to_q(const IntMatrix &m);
QMatrix to_q(const ZMatrix &m);

/// Rank over Q, by fraction-free elimination.
std::size_t rank(const ZMatrix &m);
std::size_t rank(const IntMatrix &m);
std::size_t rank(const QMatrix &m);

/// Indices of the pivot columns of the row echelon form: the first
/// linearly independent columns, a basis of the column space.
std::vector<std::size_t> pivot_columns(const ZMatrix &m);

/// Columns `cols` of m, in order.
template <class T>
Matrix<T> select_columns(const Matrix<T> &m, const std::vector<std::size_t> &cols) {
  Matrix<T> out(m.rows(), cols.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = m(i, cols[j]);
  return out;
}

/// [a | b] side by side.
template <class T> Matrix<T> hconcat(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("hconcat row mismatch");
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

/// Inverse over Q, or nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix &m);

/// U * A * V = S with U, V unimodular and S diagonal, each diagonal entry
/// nonnegative and dividing the next.
struct SmithForm {
  ZMatrix u, s, v;
  std::vector<mpz_class> invariants; // nonzero diagonal entries of S
};

SmithForm smith_normal_form(const ZMatrix &a);

/// Compressed sparse row matrix over int64 with checked arithmetic.
class SparseMatrix {
public:
  struct Entry {
    std::size_t row, col;
    std::int64_t value;
  };

  SparseMatrix() = default;
  /// Duplicate entries are summed; zeros dropped.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {cols_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const std::int64_t> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::int64_t at(std::size_t i, std::size_t j) const;

  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  /// this - lambda * I.
  SparseMatrix shifted(std::int64_t lambda) const;
  SparseMatrix transpose() const;
  IntMatrix to_dense() const;
  bool is_zero() const { return values_.empty(); }

  friend SparseMatrix operator*(const SparseMatrix &a, const SparseMatrix &b);
  friend bool operator==(const SparseMatrix &, const SparseMatrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_idx_;
  std::vector<std::int64_t> values_;
};

/// Product of the dense matrix by a sparse one on the left: s * d.
IntMatrix operator*(const SparseMatrix &s, const IntMatrix &d);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

} // namespace symcorr
