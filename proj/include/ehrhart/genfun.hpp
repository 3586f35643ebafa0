#pragma once

// Short rational generating functions for lattice points of rational
// polytopes: vertex tangent cones, signed decomposition into unimodular
// cones (index descent via LLL-assisted short vectors), apexes shifted by a
// lexicographic infinitesimal so every membership and ceiling decision is
// generic and the signed identity holds pointwise on the lattice, and
// affine-hull lattice reduction for lower-dimensional inputs.  Relatively
// open polytopes use the opposite apex shift: pushing every vertex-cone apex
// inward by the infinitesimal drops exactly the boundary lattice points.

#include "ehrhart/lattice.hpp"
#include "ehrhart/matrix.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ehrhart {

// value + coefficients of eps^1..eps^m, compared for "all sufficiently small
// eps > 0" i.e. lexicographically
struct EpsNum {
  Rat r;
  RatVec eps;
};

inline int lex_sign(const EpsNum& x) {
  if (x.r != 0) return sign(x.r);
  for (const Rat& e : x.eps)
    if (e != 0) return sign(e);
  return 0;
}

inline Int eps_ceil(const EpsNum& x) {
  if (!is_integer(x.r)) return ceil_rat(x.r);
  int s = 0;
  for (const Rat& e : x.eps)
    if (e != 0) { s = sign(e); break; }
  if (s == 0) throw std::logic_error("eps_ceil: degenerate perturbation");
  return num(x.r) + (s > 0 ? 1 : 0);
}

// z inside the closed cone {apex - eta(eps) + cone(K)} for small eps > 0,
// where eta(eps) = sum_s eps^s * eta_col_s; K unimodular or merely nonsingular
inline bool eps_cone_contains(const Mat& k_inv, const RatVec& apex, const Mat& k_inv_eta,
                              const RatVec& z) {
  RatVec base = k_inv * (z - apex);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EpsNum c{base[i], k_inv_eta.row(i)};
    if (lex_sign(c) < 0) return false;
  }
  return true;
}

// --- short rational functions ------------------------------------------------

struct SrfTerm {
  Rat coef;
  IntVec a;                                       // numerator exponent
  std::vector<std::pair<IntVec, unsigned>> dens;  // (b, gamma): (1 - x^b)^{-gamma}
};

using Srf = std::vector<SrfTerm>;

inline bool lex_negative(const IntVec& v) {
  for (const Int& x : v) {
    if (x != 0) return x < 0;
  }
  return false;
}

// absorb 1/(1-x^b) = -x^{-b}/(1-x^{-b}) so every denominator vector is
// lex-positive; merge equal denominator vectors; sort
inline void canonicalize_term(SrfTerm& t) {
  for (auto& [b, g] : t.dens) {
    if (lex_negative(b)) {
      if (g % 2 == 1) t.coef = -t.coef;
      for (std::size_t i = 0; i < b.size(); ++i) {
        t.a[i] -= Int(g) * b[i];
        b[i] = -b[i];
      }
    }
  }
  std::sort(t.dens.begin(), t.dens.end());
  std::vector<std::pair<IntVec, unsigned>> merged;
  for (auto& d : t.dens) {
    if (!merged.empty() && merged.back().first == d.first) merged.back().second += d.second;
    else merged.push_back(d);
  }
  t.dens = std::move(merged);
}

inline Srf merge_srf(Srf terms) {
  std::map<std::pair<IntVec, std::vector<std::pair<IntVec, unsigned>>>, Rat> acc;
  for (SrfTerm& t : terms) {
    canonicalize_term(t);
    if (t.coef == 0) continue;
    acc[{t.a, t.dens}] += t.coef;
  }
  Srf out;
  for (auto& [key, c] : acc) {
    if (c == 0) continue;
    out.push_back(SrfTerm{c, key.first, key.second});
  }
  return out;
}

// monomial substitution x_i -> base_i * prod x'^{dirs_col}: transports an SRF
// computed in affine-hull lattice coordinates back to the ambient lattice
inline Srf srf_map_affine(const Srf& s, const IntVec& base, const IMat& dirs) {
  Srf out;
  for (const SrfTerm& t : s) {
    SrfTerm m;
    m.coef = t.coef;
    m.a = base;
    for (std::size_t r = 0; r < dirs.rows; ++r)
      for (std::size_t c = 0; c < dirs.cols; ++c) m.a[r] += dirs.at(r, c) * t.a[c];
    for (const auto& [b, g] : t.dens) {
      IntVec nb(dirs.rows, Int(0));
      for (std::size_t r = 0; r < dirs.rows; ++r)
        for (std::size_t c = 0; c < dirs.cols; ++c) nb[r] += dirs.at(r, c) * b[c];
      m.dens.emplace_back(nb, g);
    }
    out.push_back(std::move(m));
  }
  return merge_srf(std::move(out));
}

// --- unimodular decomposition ------------------------------------------------

inline Int int_root_bound(const Int& ind, std::size_t k) {
  // least B >= 1 with B^k >= ind^(k-1)
  Int target = pow_int(ind, k - 1);
  Int lo = 1, hi = ind;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (pow_int(mid, k) >= target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

inline Int sqrt_upper(const Rat& limit) {
  // least s >= 0 with s^2 >= limit
  if (limit <= 0) return 0;
  Int hi = 1;
  while (Rat(hi * hi) < limit) hi <<= 1;
  Int lo = 0;
  while (lo < hi) {
    Int mid = (lo + hi) / 2;
    if (Rat(mid * mid) >= limit) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// all integer combinations y = R x with ||y||_2^2 <= radius2, via exact
// Gram-Schmidt bounds; returns the x vectors
inline std::vector<IntVec> enumerate_short(const IMat& r, const Rat& radius2) {
  std::size_t k = r.cols;
  Mat rm = to_mat(r);
  std::vector<RatVec> bstar(k);
  Mat mu(k, k);
  RatVec norms(k);
  for (std::size_t i = 0; i < k; ++i) {
    bstar[i] = rm.column(i);
    for (std::size_t j = 0; j < i; ++j) {
      mu.at(i, j) = norms[j] == 0 ? Rat(0) : dot(rm.column(i), bstar[j]) / norms[j];
      bstar[i] = bstar[i] - mu.at(i, j) * bstar[j];
    }
    norms[i] = dot(bstar[i], bstar[i]);
  }
  std::vector<IntVec> found;
  IntVec x(k, Int(0));
  auto rec = [&](auto&& self, std::size_t level, const Rat& left) -> void {
    if (level == 0) {
      found.push_back(x);
      return;
    }
    std::size_t i = level - 1;
    Rat center = 0;  // sum_{l > i} mu_{l,i} x_l
    for (std::size_t l = i + 1; l < k; ++l) center += mu.at(l, i) * Rat(x[l]);
    if (norms[i] == 0) throw std::logic_error("enumerate_short: dependent basis");
    Rat lim = left / norms[i];
    Int s = sqrt_upper(lim);
    Int lo = ceil_rat(-center) - s, hi = floor_rat(-center) + s;
    for (Int xi = lo; xi <= hi; ++xi) {
      Rat term = (Rat(xi) + center) * (Rat(xi) + center) * norms[i];
      if (term > left) continue;
      x[i] = xi;
      self(self, i, left - term);
    }
    x[i] = 0;
  };
  rec(rec, k, radius2);
  return found;
}

struct SignedCone {
  int sign = 1;
  IMat gens;  // columns, primitive, |det| = 1 after decomposition
};

// signed decomposition of a full-dimensional simplicial cone into unimodular
// cones, valid pointwise when all pieces share one infinitesimally shifted apex
inline std::vector<SignedCone> unimodular_decompose(const IMat& gens_in) {
  std::size_t k = gens_in.cols;
  if (gens_in.rows != k) throw std::invalid_argument("unimodular_decompose: cone not simplicial");
  auto primitivized = [](IMat m) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      IntVec col = m.column(c);
      make_primitive(col);
      for (std::size_t r = 0; r < m.rows; ++r) m.at(r, c) = col[r];
    }
    return m;
  };
  std::vector<SignedCone> out;
  std::vector<SignedCone> stack{{1, primitivized(gens_in)}};
  while (!stack.empty()) {
    SignedCone cur = std::move(stack.back());
    stack.pop_back();
    Int d = det_int(cur.gens);
    if (d == 0) throw std::invalid_argument("unimodular_decompose: degenerate cone");
    Int ind = abs_int(d);
    if (ind == 1) {
      out.push_back(std::move(cur));
      continue;
    }
    // short vector: lambda = U^{-1} w with ||lambda||_inf < 1
    Mat u_inv = inverse(to_mat(cur.gens));
    for (Rat& entry : u_inv.a) entry *= Rat(ind);
    IMat v = to_imat(u_inv);
    IMat r = lll_reduce(v);
    Int b = int_root_bound(ind, k);
    Rat radius2 = Rat(Int(k)) * Rat(b * b);
    std::optional<IntVec> best_y;
    for (const IntVec& x : enumerate_short(r, radius2)) {
      IntVec y(k, Int(0));
      bool zero = true;
      for (std::size_t row = 0; row < k; ++row) {
        for (std::size_t c = 0; c < k; ++c) y[row] += r.at(row, c) * x[c];
        if (y[row] != 0) zero = false;
      }
      if (zero) continue;
      Int ninf = 0;
      for (const Int& t : y) ninf = std::max(ninf, abs_int(t));
      if (lex_negative(y))
        for (Int& t : y) t = -t;
      if (!best_y) { best_y = y; continue; }
      Int binf = 0;
      for (const Int& t : *best_y) binf = std::max(binf, abs_int(t));
      if (ninf < binf || (ninf == binf && lex_less_int(y, *best_y))) best_y = y;
    }
    if (!best_y) throw std::logic_error("unimodular_decompose: no short vector in radius");
    RatVec lambda(k);
    for (std::size_t i = 0; i < k; ++i) lambda[i] = Rat((*best_y)[i]) / Rat(ind);
    IntVec w(k, Int(0));  // w = U * lambda, integral by construction
    RatVec w_rat = to_mat(cur.gens) * lambda;
    for (std::size_t i = 0; i < k; ++i) {
      if (!is_integer(w_rat[i])) throw std::logic_error("unimodular_decompose: non-integral w");
      w[i] = num(w_rat[i]);
    }
    bool has_positive = false;
    for (const Rat& l : lambda) has_positive |= l > 0;
    if (!has_positive) {
      for (Int& t : w) t = -t;
      for (Rat& l : lambda) l = -l;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (lambda[i] == 0) continue;
      IMat child = cur.gens;
      for (std::size_t row = 0; row < k; ++row) child.at(row, i) = w[row];
      stack.push_back({cur.sign * sign(lambda[i]), primitivized(child)});
    }
  }
  return out;
}

// triangulate a pointed full-dimensional cone given by extreme rays and the
// facet rows that cut it; returns generator matrices of simplicial subcones
inline std::vector<IMat> triangulate_cone(const std::vector<IntVec>& rays,
                                          const std::vector<IntVec>& tight_rows, std::size_t d) {
  if (rays.size() == d) return {IMat::from_columns(rays)};
  RatVec h(d, Rat(0));
  for (const IntVec& a : tight_rows)
    for (std::size_t i = 0; i < d; ++i) h[i] -= Rat(a[i]);
  std::vector<RatVec> section;
  for (const IntVec& ray : rays) {
    Rat t = dot(h, to_rat_vec(ray));
    if (t <= 0) throw std::logic_error("triangulate_cone: transversal failed");
    RatVec p = to_rat_vec(ray);
    for (Rat& x : p) x /= t;
    section.push_back(p);
  }
  // affine frame of the section hyperplane <h, x> = 1
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < section.size(); ++i) dirs.push_back(section[i] - section[0]);
  Mat dm = Mat::from_columns(dirs);
  std::vector<std::size_t> piv = rref(dm);
  std::vector<RatVec> frame;
  {
    Mat orig = Mat::from_columns(dirs);
    for (std::size_t c : piv) frame.push_back(orig.column(c));
  }
  Mat frame_cols = Mat::from_columns(frame);
  std::vector<RatVec> mapped;
  for (const RatVec& p : section) {
    auto coord = solve(frame_cols, p - section[0]);
    if (!coord) throw std::logic_error("triangulate_cone: frame solve failed");
    mapped.push_back(*coord);
  }
  std::vector<IMat> out;
  for (const auto& tri : triangulate_hull(mapped, d - 1)) {
    std::vector<IntVec> sel;
    for (std::size_t t : tri) sel.push_back(rays[t]);
    out.push_back(IMat::from_columns(sel));
  }
  return out;
}

// --- affine-hull lattice reduction -------------------------------------------

struct AffineLattice {
  bool has_lattice_points = false;
  IntVec base;                  // one lattice point on the affine hull
  IMat dirs;                    // saturated direction-lattice basis (columns)
  std::vector<RatVec> reduced;  // input points in (base, dirs) coordinates
  std::size_t dim = 0;          // affine dimension
};

inline AffineLattice affine_hull_lattice(const std::vector<RatVec>& pts, std::size_t ambient) {
  AffineLattice out;
  if (pts.empty()) return out;
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(pts[i] - pts[0]);
  Subspace span = saturate(dirs, ambient);
  out.dim = span.dim();
  Subspace comp = orth_complement(span);
  IMat a = comp.sat_basis.transposed();  // rows: constraints a . x = a . pts[0]
  RatVec c(a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    Rat v = 0;
    for (std::size_t j = 0; j < ambient; ++j) v += Rat(a.at(r, j)) * pts[0][j];
    if (!is_integer(v)) return out;  // hull misses the lattice
    c[r] = v;
  }
  IntVec y0(ambient, Int(0));
  if (a.rows > 0) {
    auto [h, u] = hnf_with_transform(a);
    // solve H t = c along the pivot staircase
    IntVec t(a.cols, Int(0));
    RatVec residue = c;
    for (std::size_t col = 0; col < h.cols; ++col) {
      std::size_t prow = h.rows;
      for (std::size_t r = 0; r < h.rows; ++r)
        if (h.at(r, col) != 0) { prow = r; break; }
      if (prow == h.rows) break;  // zero column: kernel direction
      Rat need = residue[prow] / Rat(h.at(prow, col));
      if (!is_integer(need)) return out;
      t[col] = num(need);
      for (std::size_t r = 0; r < h.rows; ++r) residue[r] -= Rat(h.at(r, col) * t[col]);
    }
    for (const Rat& x : residue)
      if (x != 0) return out;  // inconsistent: no lattice point
    for (std::size_t i = 0; i < ambient; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) y0[i] += u.at(i, j) * t[j];
  }
  out.base = y0;
  out.dirs = span.sat_basis;
  Mat b = to_mat(out.dirs);
  RatVec y0r = to_rat_vec(y0);
  for (const RatVec& p : pts) {
    if (out.dim == 0) {
      if (p != pts[0]) throw std::logic_error("affine_hull_lattice: inconsistent point set");
      out.reduced.push_back(RatVec{});
      continue;
    }
    auto xi = solve(b, p - y0r);
    if (!xi) throw std::logic_error("affine_hull_lattice: point off the hull");
    out.reduced.push_back(*xi);
  }
  out.has_lattice_points = true;
  return out;
}

// --- generating functions ----------------------------------------------------

// SRF of the full-dimensional polytope conv(pts) in Z^d coordinates; with
// `open` the apex shift points into each vertex cone, so the summed terms
// enumerate the interior lattice points instead
inline Srf genfun_full_dim(const std::vector<RatVec>& pts, std::size_t d, bool open = false) {
  VPoly v{d, pts};
  VPoly hull = hull_vertices(v);
  HPoly h = hull_to_h(hull);
  Srf terms;
  for (const RatVec& vert : hull.pts) {
    std::vector<IntVec> tight;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (dot(to_rat_vec(h.normals[r]), vert) == h.offsets[r]) tight.push_back(h.normals[r]);
    std::vector<IntVec> rays = cone_rays(tight, d);
    Mat eta(d, rays.size());  // perturbation directions: the cone's own rays
    for (std::size_t c = 0; c < rays.size(); ++c)
      for (std::size_t r = 0; r < d; ++r) eta.at(r, c) = Rat(rays[c][r]);
    for (const IMat& simp : triangulate_cone(rays, tight, d)) {
      for (const SignedCone& sc : unimodular_decompose(simp)) {
        Mat k_inv = inverse(to_mat(sc.gens));
        RatVec apex_coords = k_inv * vert;
        Mat eps_part = k_inv * eta;
        IntVec m0(d);
        for (std::size_t i = 0; i < d; ++i) {
          RatVec row = eps_part.row(i);
          // closed: apex at vert - eta(eps) keeps boundary points;
          // open: apex at vert + eta(eps) drops them
          if (!open)
            for (Rat& x : row) x = -x;
          m0[i] = eps_ceil(EpsNum{apex_coords[i], row});
        }
        SrfTerm t;
        t.coef = sc.sign;
        t.a = IntVec(d, Int(0));
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < d; ++c) t.a[r] += sc.gens.at(r, c) * m0[c];
        for (std::size_t c = 0; c < d; ++c) t.dens.emplace_back(sc.gens.column(c), 1);
        terms.push_back(std::move(t));
      }
    }
  }
  return merge_srf(std::move(terms));
}

// closed (open = relative interior) SRF of conv(pts), any affine dimension;
// zero SRF when the affine hull carries no lattice points
inline Srf genfun(const std::vector<RatVec>& pts, std::size_t ambient, bool open) {
  if (pts.empty()) return {};
  AffineLattice al = affine_hull_lattice(pts, ambient);
  if (!al.has_lattice_points) return {};
  Srf reduced;
  if (al.dim == 0) {
    // the relative interior of a single point is the point itself
    reduced.push_back(SrfTerm{Rat(1), IntVec{}, {}});
  } else {
    reduced = genfun_full_dim(al.reduced, al.dim, open);
  }
  return srf_map_affine(reduced, al.base, al.dirs);
}

inline Srf genfun_closed(const VPoly& v) { return genfun(v.pts, v.ambient, false); }
inline Srf genfun_open(const VPoly& v) { return genfun(v.pts, v.ambient, true); }

}  // namespace ehrhart
