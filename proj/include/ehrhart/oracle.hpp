#pragma once

// Brute-force cross-checks: direct lattice-point enumeration over a pruned
// bounding box, quasi-polynomial fitting from raw counts, and a literal
// fiber-by-fiber slice valuation.  These deliberately avoid the generating
// function, chamber, and summation code so agreement with the main pipeline
// is meaningful evidence.

#include "ehrhart/lattice.hpp"
#include "ehrhart/polynomial.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/slice_valuation.hpp"

#include <stdexcept>
#include <vector>

namespace ehrhart {

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

// |n * simplex  intersect  Z^d| by recursive box enumeration; each level
// tightens the current coordinate's range against every facet row using the
// best case of the still-unassigned coordinates
inline Int count_points(const Simplex& s, const Int& n) {
  if (n < 1) throw std::invalid_argument("count_points: n must be >= 1");
  std::size_t d = s.dim;
  VPoly dil;
  dil.ambient = d;
  for (const RatVec& v : s.verts) dil.pts.push_back(Rat(n) * v);
  HPoly h = hull_to_h(dil);
  std::size_t m = h.rows();
  std::vector<IntVec> rows(m);
  IntVec rhs(m);
  for (std::size_t r = 0; r < m; ++r) {
    Int mult = den(h.offsets[r]);
    rows[r] = h.normals[r];
    for (Int& x : rows[r]) x *= mult;
    rhs[r] = num(h.offsets[r]);
  }
  IntVec lo(d), hi(d);
  for (std::size_t c = 0; c < d; ++c) {
    Rat mn = dil.pts[0][c], mx = dil.pts[0][c];
    for (const RatVec& v : dil.pts) {
      if (v[c] < mn) mn = v[c];
      if (v[c] > mx) mx = v[c];
    }
    lo[c] = ceil_rat(mn);
    hi[c] = floor_rat(mx);
    if (lo[c] > hi[c]) return 0;
  }
  // suffix_min[r][i]: least possible contribution of coordinates i.. to row r
  std::vector<std::vector<Int>> suffix_min(m, std::vector<Int>(d + 1, Int(0)));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = d; i-- > 0;) {
      Int a = rows[r][i];
      Int best = a >= 0 ? a * lo[i] : a * hi[i];
      suffix_min[r][i] = suffix_min[r][i + 1] + best;
    }
  Int count = 0;
  IntVec partial(m, Int(0));
  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (level == d) {
      for (std::size_t r = 0; r < m; ++r)
        if (partial[r] > rhs[r]) return;
      ++count;
      return;
    }
    Int xlo = lo[level], xhi = hi[level];
    for (std::size_t r = 0; r < m; ++r) {
      Int slack = rhs[r] - partial[r] - suffix_min[r][level + 1];
      const Int& a = rows[r][level];
      if (a == 0) {
        if (slack < 0) return;  // row cannot be satisfied below this branch
      } else if (a > 0) {
        Int bound = floor_div(slack, a);
        if (bound < xhi) xhi = bound;
      } else {
        Int bound = ceil_div(slack, a);
        if (bound > xlo) xlo = bound;
      }
    }
    for (Int v = xlo; v <= xhi; ++v) {
      for (std::size_t r = 0; r < m; ++r) partial[r] += rows[r][level] * v;
      self(self, level + 1);
      for (std::size_t r = 0; r < m; ++r) partial[r] -= rows[r][level] * v;
    }
  };
  rec(rec, 0);
  return count;
}

struct FitResult {
  std::size_t d = 0;
  Int period = 1;
  std::vector<RatVec> coeffs;  // coeffs[r][p]: n^p coefficient on residue r+1 mod period
};

// least t >= 1 such that t * simplex has integer vertices (computed here so
// the oracle stays independent of the driver headers)
inline Int oracle_period(const Simplex& s) {
  Int t = 1;
  for (const RatVec& v : s.verts)
    for (const Rat& x : v) t = lcm_int(t, den(x));
  return t;
}

// fit the full degree-d counting polynomial on each residue class mod the
// period from d+1 raw counts
inline FitResult fit_quasipolynomial(const Simplex& s) {
  std::size_t d = s.dim;
  Int t = oracle_period(s);
  FitResult out;
  out.d = d;
  out.period = t;
  for (Int r = 1; r <= t; ++r) {
    RatVec xs, ys;
    for (std::size_t step = 0; step <= d; ++step) {
      Int m = r + Int(step) * t;
      xs.push_back(Rat(m));
      ys.push_back(Rat(count_points(s, m)));
    }
    out.coeffs.push_back(interpolate_univariate(xs, ys));
  }
  return out;
}

// literal slice valuation: walk the projected lattice points inside the
// shadow and add up fiber volumes
inline Rat el_bruteforce(const Simplex& s, const Subspace& l) {
  if (l.dim() == 0) return abs_rat(det(edge_matrix(s))) / Rat(factorial(s.dim));
  std::size_t j = l.dim();
  Lattice lambda = project_lattice(l);
  VPoly q = project_simplex(s, l, lambda);
  HPoly qh = hull_to_h(q);
  Mat lperp_basis = to_mat(orth_complement(l).sat_basis);
  IntVec lo(j), hi(j);
  for (std::size_t c = 0; c < j; ++c) {
    Rat mn = q.pts[0][c], mx = q.pts[0][c];
    for (const RatVec& v : q.pts) {
      if (v[c] < mn) mn = v[c];
      if (v[c] > mx) mx = v[c];
    }
    lo[c] = ceil_rat(mn);
    hi[c] = floor_rat(mx);
  }
  Rat total = 0;
  IntVec x(j);
  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (level == j) {
      RatVec xr = to_rat_vec(x);
      if (!hpoly_contains(qh, xr)) return;
      total += volume_lattice_coords(fiber_polytope(s, l, lambda, lperp_basis, xr));
      return;
    }
    for (Int v = lo[level]; v <= hi[level]; ++v) {
      x[level] = v;
      self(self, level + 1);
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace ehrhart
