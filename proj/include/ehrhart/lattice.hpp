#pragma once

// Lattice primitives: column Hermite normal form (the canonical form used to
// deduplicate subspaces), LLL reduction, saturation, orthogonal complements,
// intersections, and projected lattices with their Gram determinants.

#include "ehrhart/matrix.hpp"
#include "ehrhart/rational.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehrhart {

// Column-style HNF: returns (H, U) with input * U = H, U unimodular.  H keeps
// the full column count; zero columns are moved to the right.  Pivot rows
// strictly increase column by column, pivots are positive, and entries of
// earlier columns in a pivot row are reduced into [0, pivot).
inline std::pair<IMat, IMat> hnf_with_transform(const IMat& in) {
  IMat h = in;
  IMat u = IMat::identity(in.cols);
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t r = 0; r < h.rows; ++r) std::swap(h.at(r, x), h.at(r, y));
    for (std::size_t r = 0; r < u.rows; ++r) std::swap(u.at(r, x), u.at(r, y));
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    if (f == 0) return;
    for (std::size_t r = 0; r < h.rows; ++r) h.at(r, dst) += f * h.at(r, src);
    for (std::size_t r = 0; r < u.rows; ++r) u.at(r, dst) += f * u.at(r, src);
  };
  auto negate_col = [&](std::size_t x) {
    for (std::size_t r = 0; r < h.rows; ++r) h.at(r, x) = -h.at(r, x);
    for (std::size_t r = 0; r < u.rows; ++r) u.at(r, x) = -u.at(r, x);
  };

  std::size_t next = 0;  // next pivot column slot
  for (std::size_t row = 0; row < h.rows && next < h.cols; ++row) {
    // Euclidean reduction across columns next..end until one nonzero remains.
    while (true) {
      std::size_t best = h.cols;
      for (std::size_t c = next; c < h.cols; ++c)
        if (h.at(row, c) != 0 && (best == h.cols || abs_int(h.at(row, c)) < abs_int(h.at(row, best))))
          best = c;
      if (best == h.cols) break;  // all zero in this row
      swap_cols(next, best);
      bool others = false;
      for (std::size_t c = next + 1; c < h.cols; ++c) {
        if (h.at(row, c) == 0) continue;
        Int q = h.at(row, c) / h.at(row, next);  // truncated; loop re-runs until exact
        add_col(c, next, -q);
        if (h.at(row, c) != 0) others = true;
      }
      if (!others) break;
    }
    if (h.at(row, next) == 0) continue;
    if (h.at(row, next) < 0) negate_col(next);
    // Reduce earlier columns' entries in this pivot row into [0, pivot).
    for (std::size_t c = 0; c < next; ++c) {
      Int q = h.at(row, c) / h.at(row, next);
      if (h.at(row, c) - q * h.at(row, next) < 0) --q;
      add_col(c, next, -q);
    }
    ++next;
  }
  return {std::move(h), std::move(u)};
}

// Canonical column-HNF basis of the integer column span (zero columns dropped).
inline IMat hnf(const IMat& generators) {
  auto [h, u] = hnf_with_transform(generators);
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols; ++c) {
    bool nonzero = false;
    for (std::size_t row = 0; row < h.rows; ++row)
      if (h.at(row, c) != 0) { nonzero = true; break; }
    if (nonzero) r = c + 1;
  }
  IMat out(h.rows, r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t row = 0; row < h.rows; ++row) out.at(row, c) = h.at(row, c);
  return out;
}

inline IMat hnf(const Mat& generators) { return hnf(to_imat(generators)); }

// Z-basis of {x integer : A x = 0}: the transform columns that map onto the
// zero columns of the HNF.
inline IMat integer_kernel(const IMat& a) {
  if (a.rows == 0) return IMat::identity(a.cols);
  auto [h, u] = hnf_with_transform(a);
  std::size_t rnk = 0;
  for (std::size_t c = 0; c < h.cols; ++c) {
    bool nonzero = false;
    for (std::size_t row = 0; row < h.rows; ++row)
      if (h.at(row, c) != 0) { nonzero = true; break; }
    if (nonzero) rnk = c + 1;
  }
  IMat out(a.cols, a.cols - rnk);
  for (std::size_t c = rnk; c < a.cols; ++c)
    for (std::size_t row = 0; row < a.cols; ++row) out.at(row, c - rnk) = u.at(row, c);
  return hnf(out);
}

// LLL reduction with delta = 3/4 on independent integer columns.
inline IMat lll_reduce(const IMat& basis) {
  std::size_t n = basis.cols;
  if (n == 0) return basis;
  std::vector<IntVec> b = basis.columns();
  if (rank(to_mat(basis)) != n) throw std::invalid_argument("lll_reduce: dependent columns");

  std::vector<RatVec> mu(n, RatVec(n, Rat(0)));
  RatVec bstar_norm(n, Rat(0));
  auto gram_schmidt = [&]() {
    // bstar_i = b_i - sum_{j<i} mu_ij bstar_j, tracked via norms and mu only
    std::vector<RatVec> bstar(n);
    for (std::size_t i = 0; i < n; ++i) {
      bstar[i] = to_rat_vec(b[i]);
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = bstar_norm[j] == 0 ? Rat(0) : dot(to_rat_vec(b[i]), bstar[j]) / bstar_norm[j];
        bstar[i] = bstar[i] - mu[i][j] * bstar[j];
      }
      bstar_norm[i] = dot(bstar[i], bstar[i]);
    }
  };
  auto size_reduce = [&](std::size_t k, std::size_t j) {
    Int q = round_rat(mu[k][j]);
    if (q == 0) return;
    for (std::size_t r = 0; r < b[k].size(); ++r) b[k][r] -= q * b[j][r];
    for (std::size_t l = 0; l <= j; ++l) mu[k][l] -= Rat(q) * (l == j ? Rat(1) : mu[j][l]);
  };

  gram_schmidt();
  const Rat delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (bstar_norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar_norm[k - 1]) {
      for (std::size_t j = k - 1; j-- > 0;) size_reduce(k, j);
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();  // tiny sizes; full recompute keeps the code simple
      k = k > 1 ? k - 1 : 1;
    }
  }
  return IMat::from_columns(b);
}

inline Rat gram_det(const Mat& basis) {
  if (basis.cols == 0) return 1;  // empty basis: lattice {0}, determinant 1
  return det(basis.transposed() * basis);
}

// A lattice with possibly non-integer basis vectors (e.g. a projected lattice),
// stored as an integer matrix over one global denominator.
struct Lattice {
  std::size_t ambient_dim = 0;
  IMat int_basis;  // columns scaled by denom
  Int denom = 1;

  std::size_t rank() const { return int_basis.cols; }
  Mat basis() const {
    Mat m = to_mat(int_basis);
    for (Rat& x : m.a) x /= Rat(denom);
    return m;
  }
};

struct Subspace {
  std::size_t ambient_dim = 0;
  IMat sat_basis;  // canonical column HNF, columns span Z^d ∩ L

  std::size_t dim() const { return sat_basis.cols; }

  std::string canonical_key() const {
    std::ostringstream os;
    os << ambient_dim << ':' << sat_basis.cols;
    for (const Int& x : sat_basis.a) os << ',' << x;
    return os.str();
  }
  bool operator==(const Subspace& o) const {
    return ambient_dim == o.ambient_dim && sat_basis == o.sat_basis;
  }
  bool operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return canonical_key() < o.canonical_key();
  }
};

// Canonical Subspace spanning the same rational subspace as the given columns:
// Z^d ∩ span is computed by intersecting the integer kernel of the orthogonal
// constraints, which is automatically saturated.
inline Subspace saturate(const Mat& span_cols) {
  std::size_t d = span_cols.rows;
  Subspace s;
  s.ambient_dim = d;
  if (span_cols.cols == 0 || rank(span_cols) == 0) {
    s.sat_basis = IMat(d, 0);
    return s;
  }
  // constraints: x orthogonal to the rational kernel of span^T
  std::vector<RatVec> complement = kernel(span_cols.transposed());
  IMat n(complement.size(), d);
  for (std::size_t i = 0; i < complement.size(); ++i) {
    auto [iv, den_] = scale_to_integer(complement[i]);
    for (std::size_t c = 0; c < d; ++c) n.at(i, c) = iv[c];
  }
  s.sat_basis = integer_kernel(n);
  return s;
}

inline Subspace saturate(const std::vector<RatVec>& span_vectors, std::size_t ambient) {
  if (span_vectors.empty()) {
    Subspace s;
    s.ambient_dim = ambient;
    s.sat_basis = IMat(ambient, 0);
    return s;
  }
  return saturate(Mat::from_columns(span_vectors));
}

inline Subspace zero_subspace(std::size_t d) {
  Subspace s;
  s.ambient_dim = d;
  s.sat_basis = IMat(d, 0);
  return s;
}

inline Subspace full_subspace(std::size_t d) {
  Subspace s;
  s.ambient_dim = d;
  s.sat_basis = IMat::identity(d);
  return s;
}

inline Subspace orth_complement(const Subspace& l) {
  Subspace s;
  s.ambient_dim = l.ambient_dim;
  s.sat_basis = integer_kernel(l.sat_basis.transposed());
  return s;
}

inline Subspace intersect(const Subspace& l1, const Subspace& l2) {
  if (l1.ambient_dim != l2.ambient_dim) throw std::invalid_argument("intersect: ambient mismatch");
  Subspace c1 = orth_complement(l1), c2 = orth_complement(l2);
  IMat stacked(c1.sat_basis.cols + c2.sat_basis.cols, l1.ambient_dim);
  IMat t1 = c1.sat_basis.transposed(), t2 = c2.sat_basis.transposed();
  for (std::size_t r = 0; r < t1.rows; ++r)
    for (std::size_t c = 0; c < t1.cols; ++c) stacked.at(r, c) = t1.at(r, c);
  for (std::size_t r = 0; r < t2.rows; ++r)
    for (std::size_t c = 0; c < t2.cols; ++c) stacked.at(t1.rows + r, c) = t2.at(r, c);
  Subspace s;
  s.ambient_dim = l1.ambient_dim;
  s.sat_basis = integer_kernel(stacked);
  return s;
}

inline bool subspace_contains(const Subspace& outer, const RatVec& v) {
  if (is_zero(v)) return true;
  if (outer.dim() == 0) return false;
  return solve(to_mat(outer.sat_basis), v).has_value();
}

inline bool subspace_leq(const Subspace& inner, const Subspace& outer) {
  Mat b = to_mat(outer.sat_basis);
  for (std::size_t c = 0; c < inner.sat_basis.cols; ++c)
    if (!solve(b, to_rat_vec(inner.sat_basis.column(c)))) return false;
  return true;
}

// Orthogonal projection of Z^d onto L: project the standard basis, express in
// coordinates w.r.t. sat_basis, canonicalize those coordinates by HNF, map
// back.  Basis vectors lie in L and are rational with one global denominator.
inline Lattice project_lattice(const Subspace& l) {
  if (l.dim() == 0) throw std::invalid_argument("project_lattice: zero subspace");
  std::size_t d = l.ambient_dim, r = l.dim();
  Mat rb = to_mat(l.sat_basis);                    // d x r
  Mat g = rb.transposed() * rb;                    // r x r, invertible
  Mat coords = inverse(g) * rb.transposed();       // r x d: column i = coords of pr(e_i)
  Int dcm = 1;
  for (const Rat& x : coords.a) dcm = lcm_int(dcm, den(x));
  IMat ci(r, d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) ci.at(i, j) = num(coords.at(i, j)) * (dcm / den(coords.at(i, j)));
  IMat h = hnf(ci);                                // r x r
  Lattice lat;
  lat.ambient_dim = d;
  lat.int_basis = l.sat_basis * h;                 // columns R*h_c, over denominator dcm
  lat.denom = dcm;
  return lat;
}

// Coordinates of the orthogonal projection of y onto span(basis columns),
// w.r.t. those columns: (B^T B)^{-1} B^T y.
inline RatVec projection_coords(const Mat& basis, const RatVec& y) {
  Mat g = basis.transposed() * basis;
  auto x = solve(g, basis.transposed() * y);
  if (!x) throw std::logic_error("projection_coords: singular Gram matrix");
  return *x;
}

}  // namespace ehrhart
