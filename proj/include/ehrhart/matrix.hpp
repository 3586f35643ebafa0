#pragma once

// Dense exact matrices (rational and integer) with Gaussian elimination,
// determinants, linear solves and kernels.  Sizes here are tiny (ambient
// dimension <= ~13), so O(n^3) rational elimination is the right tool.

#include "ehrhart/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ehrhart {

struct Mat {
  std::size_t rows = 0, cols = 0;
  RatVec a;  // row-major

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}

  Rat& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat from_columns(const std::vector<RatVec>& cols_in) {
    if (cols_in.empty()) return Mat(0, 0);
    Mat m(cols_in[0].size(), cols_in.size());
    for (std::size_t c = 0; c < cols_in.size(); ++c) {
      if (cols_in[c].size() != m.rows) throw std::invalid_argument("from_columns: ragged input");
      for (std::size_t r = 0; r < m.rows; ++r) m.at(r, c) = cols_in[c][r];
    }
    return m;
  }

  static Mat from_rows(const std::vector<RatVec>& rows_in) {
    if (rows_in.empty()) return Mat(0, 0);
    Mat m(rows_in.size(), rows_in[0].size());
    for (std::size_t r = 0; r < rows_in.size(); ++r) {
      if (rows_in[r].size() != m.cols) throw std::invalid_argument("from_rows: ragged input");
      for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
    }
    return m;
  }

  RatVec column(std::size_t c) const {
    RatVec v(rows);
    for (std::size_t r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
  }

  RatVec row(std::size_t r) const {
    RatVec v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = at(r, c);
    return v;
  }

  std::vector<RatVec> columns() const {
    std::vector<RatVec> v;
    v.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) v.push_back(column(c));
    return v;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat*: shape mismatch");
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Rat& xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

inline RatVec operator*(const Mat& m, const RatVec& v) {
  if (m.cols != v.size()) throw std::invalid_argument("mat*vec: shape mismatch");
  RatVec r(m.rows, Rat(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
  return r;
}

// Row echelon reduction in place; returns pivot columns.  Reduced form
// (pivots 1, zeros above and below) so back-substitution reads off directly.
inline std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Mat m) { return rref(m).size(); }

inline Rat det(Mat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  Rat d = 1;
  for (std::size_t c = 0; c < m.cols; ++c) {
    std::size_t p = c;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rat inv = Rat(1) / m.at(c, c);
    for (std::size_t i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) * inv;
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

// Solves M x = b if consistent; with a unique solution when M has full column
// rank.  Returns nullopt if inconsistent; for underdetermined systems returns
// one particular solution (free variables set to 0).
inline std::optional<RatVec> solve(const Mat& m, const RatVec& b) {
  if (m.rows != b.size()) throw std::invalid_argument("solve: shape mismatch");
  Mat aug(m.rows, m.cols + 1);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;  // row (0..0|1)
  RatVec x(m.cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols);
  return x;
}

// Basis of the rational kernel {x : M x = 0}, one column per free variable.
inline std::vector<RatVec> kernel(Mat m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(m.cols, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, c);
    basis.push_back(v);
  }
  return basis;
}

inline Mat inverse(const Mat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  std::size_t n = m.rows;
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) throw std::invalid_argument("inverse: singular");
  Mat inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

// ---- integer matrices ----

struct IMat {
  std::size_t rows = 0, cols = 0;
  IntVec a;  // row-major

  IMat() = default;
  IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  Int& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  static IMat identity(std::size_t n) {
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IMat from_columns(const std::vector<IntVec>& cols_in) {
    if (cols_in.empty()) return IMat(0, 0);
    IMat m(cols_in[0].size(), cols_in.size());
    for (std::size_t c = 0; c < cols_in.size(); ++c) {
      if (cols_in[c].size() != m.rows) throw std::invalid_argument("from_columns: ragged input");
      for (std::size_t r = 0; r < m.rows; ++r) m.at(r, c) = cols_in[c][r];
    }
    return m;
  }

  IntVec column(std::size_t c) const {
    IntVec v(rows);
    for (std::size_t r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
  }

  std::vector<IntVec> columns() const {
    std::vector<IntVec> v;
    v.reserve(cols);
    for (std::size_t c = 0; c < cols; ++c) v.push_back(column(c));
    return v;
  }

  IMat transposed() const {
    IMat t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat to_mat(const IMat& m) {
  Mat r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

inline IMat to_imat(const Mat& m) {
  IMat r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    if (!is_integer(m.a[i])) throw std::invalid_argument("to_imat: non-integer entry");
    r.a[i] = num(m.a[i]);
  }
  return r;
}

inline IMat operator*(const IMat& x, const IMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("imat*: shape mismatch");
  IMat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& xik = x.at(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

inline IntVec operator*(const IMat& m, const IntVec& v) {
  if (m.cols != v.size()) throw std::invalid_argument("imat*vec: shape mismatch");
  IntVec r(m.rows, Int(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) r[i] += m.at(i, j) * v[j];
  return r;
}

inline Int det_int(const IMat& m) {
  Rat d = det(to_mat(m));
  return num(d);  // determinant of an integer matrix is an integer
}

}  // namespace ehrhart
