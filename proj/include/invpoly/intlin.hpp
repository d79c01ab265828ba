#pragma once

// Exact integer and rational linear algebra on small dense matrices.
// Everything here is arbitrary precision; there is no floating point.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "invpoly/error.hpp"

namespace invpoly {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// gcd of |v_i|. The empty set and the all-zero set have gcd 0.
inline Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x != 0) g = boost::multiprecision::gcd(g, abs_value(x));
    if (g == 1) break;
  }
  return g;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / boost::multiprecision::gcd(a, b) * b);
}

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error(Errc::BadShape, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Copy with column `col` removed.
  Matrix without_col(std::size_t col) const {
    Matrix out(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0, k = 0; c < cols_; ++c)
        if (c != col) out(r, k++) = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::BadShape, "product of incompatible shapes");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> v) {
  if (a.cols() != v.size()) throw Error(Errc::BadShape, "matrix-vector shape mismatch");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

namespace detail {

// In-place Bareiss forward elimination over the first `pivot_cols` columns.
// Rows are swapped to find a nonzero pivot (first nonzero in scan order).
// Returns the number of pivots found; `sign` tracks row swaps.
inline std::size_t bareiss_forward(IntMatrix& m, std::size_t pivot_cols, int& sign,
                                   std::vector<std::size_t>* pivot_columns = nullptr) {
  sign = 1;
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < pivot_cols && rank < m.rows(); ++col) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != rank) {
      m.swap_rows(p, rank);
      sign = -sign;
    }
    const Integer pivot = m(rank, col);
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      const Integer lead = m(i, col);
      for (std::size_t j = col + 1; j < m.cols(); ++j)
        m(i, j) = (m(i, j) * pivot - lead * m(rank, j)) / prev;
      m(i, col) = 0;
    }
    prev = pivot;
    if (pivot_columns) pivot_columns->push_back(col);
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer det_exact(const IntMatrix& m) {
  if (!m.square()) throw Error(Errc::NonSquare, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix work = m;
  int sign = 1;
  std::size_t r = detail::bareiss_forward(work, work.cols(), sign);
  if (r < work.rows()) return 0;
  // With no skipped columns the last pivot is the determinant up to row swaps.
  Integer det = work(work.rows() - 1, work.cols() - 1);
  return sign < 0 ? Integer(-det) : det;
}

inline std::size_t rank_exact(const IntMatrix& m) {
  IntMatrix work = m;
  int sign = 1;
  return detail::bareiss_forward(work, work.cols(), sign);
}

/// Signed maximal minors of an n x (n+1) matrix:
/// d_i = (-1)^(i+n+1) det(M without column i), i 1-based. M * d = 0.
inline std::vector<Integer> maximal_minor_vector(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n + 1)
    throw Error(Errc::BadShape, "expected an n x (n+1) matrix, got " + std::to_string(m.rows()) +
                                    "x" + std::to_string(m.cols()));
  std::vector<Integer> d(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    Integer minor = det_exact(m.without_col(i));
    // 0-based i: (i+1) + n + 1 has the parity of i + n.
    d[i] = ((i + n) % 2 == 0) ? minor : Integer(-minor);
  }
  return d;
}

/// d / gcd(|d_i|), sign chosen so the last entry is positive. A zero last
/// entry leaves the sign untouched.
inline std::vector<Integer> primitive_kernel(std::span<const Integer> d) {
  const Integer g = gcd_of(d);
  if (g == 0) throw Error(Errc::ZeroVector, "primitive vector of the zero vector");
  std::vector<Integer> c(d.begin(), d.end());
  const bool flip = c.back() < 0;
  for (auto& x : c) {
    x /= g;
    if (flip) x = -x;
  }
  return c;
}

struct SnfResult {
  std::vector<Integer> diag;  // length min(rows, cols); s_1 | s_2 | ...
  IntMatrix left;             // rows x rows, det +-1
  IntMatrix right;            // cols x cols, det +-1
};

/// Smith normal form with transforms: left * M * right = diag(s_1, ..., s_k).
/// Pivot is the smallest nonzero |entry| of the active block, first in
/// row-major scan order.
inline SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);

  auto row_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row dst -= q*row src
    for (std::size_t c = 0; c < cols; ++c) a(dst, c) -= q * a(src, c);
    for (std::size_t c = 0; c < rows; ++c) left(dst, c) -= q * left(src, c);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col dst -= q*col src
    for (std::size_t r = 0; r < rows; ++r) a(r, dst) -= q * a(r, src);
    for (std::size_t r = 0; r < cols; ++r) right(r, dst) -= q * right(r, src);
  };

  const std::size_t k = std::min(rows, cols);
  for (std::size_t s = 0; s < k; ++s) {
    bool any = true;
    for (;;) {
      std::size_t pi = rows, pj = cols;
      Integer best = 0;
      for (std::size_t i = s; i < rows; ++i)
        for (std::size_t j = s; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs_value(a(i, j));
          if (pi == rows || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) {
        any = false;
        break;
      }
      a.swap_rows(s, pi);
      left.swap_rows(s, pi);
      a.swap_cols(s, pj);
      right.swap_cols(s, pj);

      bool clear = true;
      for (std::size_t i = s + 1; i < rows; ++i) {
        if (a(i, s) == 0) continue;
        Integer q = a(i, s) / a(s, s);
        if (q != 0) row_axpy(i, s, q);
        if (a(i, s) != 0) clear = false;
      }
      for (std::size_t j = s + 1; j < cols; ++j) {
        if (a(s, j) == 0) continue;
        Integer q = a(s, j) / a(s, s);
        if (q != 0) col_axpy(j, s, q);
        if (a(s, j) != 0) clear = false;
      }
      if (!clear) continue;

      bool divides = true;
      for (std::size_t i = s + 1; i < rows && divides; ++i)
        for (std::size_t j = s + 1; j < cols; ++j)
          if (a(i, j) % a(s, s) != 0) {
            row_axpy(s, i, Integer(-1));  // row s += row i
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!any) break;
    if (a(s, s) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(s, c) = -a(s, c);
      for (std::size_t c = 0; c < rows; ++c) left(s, c) = -left(s, c);
    }
  }

  SnfResult out{std::vector<Integer>(k), std::move(left), std::move(right)};
  for (std::size_t s = 0; s < k; ++s) out.diag[s] = a(s, s);
  return out;
}

struct CokernelStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_orders;  // elementary divisors > 1

  Integer torsion_order() const {
    Integer p = 1;
    for (const auto& t : torsion_orders) p *= t;
    return p;
  }
};

/// Structure of Z^rows / M Z^cols.
inline CokernelStructure cokernel_structure(const IntMatrix& m) {
  const SnfResult snf = smith_normal_form(m);
  CokernelStructure out;
  std::size_t rank = 0;
  for (const auto& s : snf.diag) {
    if (s != 0) ++rank;
    if (s > 1) out.torsion_orders.push_back(s);
  }
  out.free_rank = m.rows() - rank;
  return out;
}

/// Exact solution of A x = b for nonsingular square A: Bareiss forward
/// elimination on [A | b] followed by rational back substitution.
inline std::vector<Rational> solve_rational(const IntMatrix& a, std::span<const Integer> b) {
  if (!a.square()) throw Error(Errc::NonSquare, "solve with a non-square matrix");
  if (b.size() != a.rows()) throw Error(Errc::BadShape, "right-hand side length mismatch");
  const std::size_t n = a.rows();
  IntMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  int sign = 1;
  if (detail::bareiss_forward(aug, n, sign) < n)
    throw Error(Errc::SingularMatrix, "matrix is singular over the rationals");
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(aug(i, n));
    for (std::size_t j = i + 1; j < n; ++j)
      if (aug(i, j) != 0) acc -= Rational(aug(i, j)) * x[j];
    x[i] = acc / Rational(aug(i, i));
  }
  return x;
}

/// Exact rational inverse by Gauss-Jordan elimination.
inline RationalMatrix inverse_rational(const IntMatrix& m) {
  if (!m.square()) throw Error(Errc::NonSquare, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = to_rational(m);
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) throw Error(Errc::SingularMatrix, "matrix is singular over the rationals");
    a.swap_rows(p, col);
    inv.swap_rows(p, col);
    const Rational pivot = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= pivot;
      inv(col, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace invpoly
