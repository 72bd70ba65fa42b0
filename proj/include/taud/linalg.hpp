#ifndef TAUD_LINALG_HPP
#define TAUD_LINALG_HPP

// Exact dense linear algebra over the rationals.  Matrices here are small
// (a few hundred rows at most), so a plain row-major vector is enough.

#include <boost/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace taud {

using Rational = boost::rational<long long>;

/// Zero test that avoids boost::rational's mixed-type comparison operators,
/// which recurse indefinitely under C++20 rewritten-comparison rules.
inline bool is_zero(const Rational &x) { return x.numerator() == 0; }

/// Dense row-major matrix of rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto &x : data_)
      if (!taud::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Matrix product; throws on a dimension mismatch.
inline Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational &x = a(i, k);
      if (taud::is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

inline Matrix operator+(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix sum: dimension mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix &m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && taud::is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || taud::is_zero(m(r, col))) continue;
      const Rational f = m(r, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of the right null space {x : m x = 0}, one column per basis vector.
inline Matrix null_space(Matrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free_cols[k]);
  }
  return basis;
}

inline Matrix transpose(const Matrix &m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

/// Returns a surjection q (rows = codim) whose kernel is the column span of `image`
/// inside a space of dimension `ambient`.
inline Matrix quotient_map(const Matrix &image, std::size_t ambient) {
  if (image.cols() == 0) return Matrix::identity(ambient);
  return transpose(null_space(transpose(image)));
}

/// Returns a right inverse s of a full-row-rank matrix q (q s = identity).
inline Matrix right_inverse(const Matrix &q) {
  // q has full row rank; solve q s = I column by column via rref of [q | I].
  Matrix aug(q.rows(), q.cols() + q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < q.cols(); ++j) aug(i, j) = q(i, j);
    aug(i, q.cols() + i) = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() != q.rows() || (!pivots.empty() && pivots.back() >= q.cols()))
    throw std::invalid_argument("right_inverse: matrix is not of full row rank");
  Matrix s(q.cols(), q.rows());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t k = 0; k < q.rows(); ++k) s(pivots[r], k) = aug(r, q.cols() + k);
  return s;
}

} // namespace taud

#endif // TAUD_LINALG_HPP
