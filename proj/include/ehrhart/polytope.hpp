#pragma once

// Rational polytopes: the input simplex, faces, projections to lattice
// coordinates, exact H/V conversions in small dimension, volumes, tangent
// cones, hyperplane-arrangement chambers and their open faces.

#include "ehrhart/lattice.hpp"
#include "ehrhart/matrix.hpp"
#include "ehrhart/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehrhart {

struct VPoly {
  std::size_t ambient = 0;
  std::vector<RatVec> pts;
};

// Rows kept as primitive integer normals with rational offsets: a_i . x <= b_i.
struct HPoly {
  std::size_t ambient = 0;
  std::vector<IntVec> normals;
  RatVec offsets;
  std::size_t rows() const { return normals.size(); }
};

struct Simplex {
  std::size_t dim = 0;
  std::vector<RatVec> verts;  // dim + 1 points
};

// apex + primitive integer generators (columns), lex-sorted
struct Cone {
  RatVec apex;
  IMat gens;
};

inline bool lex_less(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline bool lex_less_int(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

inline Mat edge_matrix(const Simplex& s) {
  std::vector<RatVec> cols;
  for (std::size_t i = 1; i < s.verts.size(); ++i) cols.push_back(s.verts[i] - s.verts[0]);
  return Mat::from_columns(cols);
}

inline Simplex make_simplex(std::vector<RatVec> verts) {
  if (verts.empty()) throw std::invalid_argument("simplex not full-dimensional");
  Simplex s;
  s.dim = verts[0].size();
  s.verts = std::move(verts);
  if (s.verts.size() != s.dim + 1) throw std::invalid_argument("simplex not full-dimensional");
  for (const RatVec& v : s.verts)
    if (v.size() != s.dim) throw std::invalid_argument("simplex not full-dimensional");
  if (s.dim == 0 || det(edge_matrix(s)) == 0)
    throw std::invalid_argument("simplex not full-dimensional");
  return s;
}

// all subsets of {0..d} of size j+1, in lexicographic order
inline std::vector<std::vector<std::size_t>> faces(std::size_t d, std::size_t j) {
  if (j > d) throw std::invalid_argument("faces: dimension out of range");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == j + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (j + 1 - cur.size()) <= d + 1; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline Subspace lin_face(const Simplex& s, const std::vector<std::size_t>& face) {
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < face.size(); ++i)
    dirs.push_back(s.verts[face[i]] - s.verts[face[0]]);
  return saturate(dirs, s.dim);
}

inline std::size_t affine_rank(const std::vector<RatVec>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(pts[i] - pts[0]);
  return rank(Mat::from_columns(dirs));
}

inline std::vector<RatVec> dedupe_points(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Brute-force facet enumeration: every hyperplane spanned by `dim` affinely
// independent points with all points on one side.  Requires full-dimensional
// input; rows come out deduplicated and lex-sorted.
inline HPoly hull_to_h(const VPoly& v) {
  std::size_t d = v.ambient;
  std::vector<RatVec> pts = dedupe_points(v.pts);
  if (affine_rank(pts) != d) throw std::invalid_argument("hull_to_h: not full-dimensional");
  if (d == 1) {
    HPoly h1;
    h1.ambient = 1;
    h1.normals = {IntVec{Int(-1)}, IntVec{Int(1)}};
    h1.offsets = {-pts.front()[0], pts.back()[0]};  // pts lex-sorted: min, max
    return h1;
  }
  std::set<std::pair<IntVec, Rat>> rows;

  std::vector<std::size_t> idx;
  auto consider = [&]() {
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < idx.size(); ++i) dirs.push_back(pts[idx[i]] - pts[idx[0]]);
    Mat m = Mat::from_rows(dirs);
    std::vector<RatVec> ker = kernel(m);
    if (ker.size() != 1) return;  // not a hyperplane spanned by these points
    auto [normal, den_] = scale_to_integer(ker[0]);
    make_primitive(normal);
    Rat c = dot(to_rat_vec(normal), pts[idx[0]]);
    int side = 0;
    for (const RatVec& p : pts) {
      int sg = sign(dot(to_rat_vec(normal), p) - c);
      if (sg == 0) continue;
      if (side == 0) side = sg;
      else if (side != sg) return;  // points on both sides
    }
    if (side == 0) return;  // all points on the hyperplane: impossible if full-dim
    if (side > 0) {
      for (Int& x : normal) x = -x;
      c = -c;
    }
    rows.insert({normal, c});
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() == d) {
      consider();
      return;
    }
    for (std::size_t i = start; i + (d - idx.size()) <= pts.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  if (d >= 1) rec(rec, 0);

  HPoly h;
  h.ambient = d;
  for (const auto& [a, b] : rows) {
    h.normals.push_back(a);
    h.offsets.push_back(b);
  }
  return h;
}

inline bool hpoly_contains(const HPoly& h, const RatVec& x) {
  for (std::size_t r = 0; r < h.rows(); ++r)
    if (dot(to_rat_vec(h.normals[r]), x) > h.offsets[r]) return false;
  return true;
}

// Extreme rays of {x : rows . x <= 0} assuming the cone is pointed; brute
// force over (d-1)-subsets of rows.  Returns primitive, lex-sorted rays.
inline std::vector<IntVec> cone_rays(const std::vector<IntVec>& rows, std::size_t d) {
  std::vector<IntVec> rays;
  std::set<IntVec> seen;
  std::vector<std::size_t> idx;
  auto consider = [&]() {
    std::vector<RatVec> sel;
    for (std::size_t i : idx) sel.push_back(to_rat_vec(rows[i]));
    std::vector<RatVec> ker = kernel(sel.empty() ? Mat(0, d) : Mat::from_rows(sel));
    if (ker.size() != 1) return;
    auto [r, den_] = scale_to_integer(ker[0]);
    make_primitive(r);
    for (int s = 0; s < 2; ++s) {
      bool ok = true;
      for (const IntVec& a : rows)
        if (dot(a, r) > 0) { ok = false; break; }
      if (ok && seen.insert(r).second) rays.push_back(r);
      for (Int& x : r) x = -x;
    }
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() + 1 == d || (d == 1 && idx.empty())) {
      consider();
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  if (d == 1) consider();
  else rec(rec, 0);
  std::sort(rays.begin(), rays.end(), lex_less_int);
  return rays;
}

inline bool hpoly_bounded(const HPoly& h) {
  Mat a(h.rows(), h.ambient);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.ambient; ++c) a.at(r, c) = Rat(h.normals[r][c]);
  if (rank(a) < h.ambient) return false;  // recession cone contains a line
  return cone_rays(h.normals, h.ambient).empty();
}

// All vertices of a bounded H-polytope: basic solutions of row subsets.
inline VPoly h_to_hull(const HPoly& h) {
  if (!hpoly_bounded(h)) throw std::invalid_argument("h_to_hull: unbounded");
  std::size_t d = h.ambient;
  std::vector<RatVec> verts;
  std::vector<std::size_t> idx;
  auto consider = [&]() {
    Mat m(d, d);
    RatVec rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t c = 0; c < d; ++c) m.at(i, c) = Rat(h.normals[idx[i]][c]);
      rhs[i] = h.offsets[idx[i]];
    }
    if (rank(m) != d) return;
    auto x = solve(m, rhs);
    if (x && hpoly_contains(h, *x)) verts.push_back(*x);
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() == d) {
      consider();
      return;
    }
    for (std::size_t i = start; i + (d - idx.size()) <= h.rows(); ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  VPoly v;
  v.ambient = d;
  v.pts = dedupe_points(std::move(verts));
  return v;
}

// Irredundant vertex set of the hull of a full-dimensional point set.
inline VPoly hull_vertices(const VPoly& v) { return h_to_hull(hull_to_h(v)); }

// Q = orthogonal projection of the simplex onto L, in the lattice coordinates
// of project_lattice(L) so that points of the projected lattice are integral.
inline VPoly project_simplex(const Simplex& s, const Subspace& l, const Lattice& lambda) {
  Mat b = lambda.basis();
  VPoly q;
  q.ambient = l.dim();
  for (const RatVec& v : s.verts) q.pts.push_back(projection_coords(b, v));
  q.pts = dedupe_points(std::move(q.pts));
  if (affine_rank(q.pts) == q.ambient) q = hull_vertices(q);
  return q;
}

inline VPoly project_simplex(const Simplex& s, const Subspace& l) {
  return project_simplex(s, l, project_lattice(l));
}

// --- volume ---------------------------------------------------------------

// Triangulation of a full-dimensional hull into simplices (as index tuples
// into `pts`): cone from the lex-lowest vertex over triangulated facets that
// do not contain it.  Facets are triangulated recursively in affine frames.
inline std::vector<std::vector<std::size_t>> triangulate_hull(const std::vector<RatVec>& pts,
                                                              std::size_t d) {
  if (d == 0) return {{0}};
  if (pts.size() == d + 1) {
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return {all};
  }
  HPoly h = hull_to_h(VPoly{d, pts});
  std::size_t base = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (lex_less(pts[i], pts[base])) base = i;

  std::vector<std::vector<std::size_t>> out;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    RatVec a = to_rat_vec(h.normals[r]);
    if (dot(a, pts[base]) == h.offsets[r]) continue;  // facet contains base
    std::vector<std::size_t> fidx;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (dot(a, pts[i]) == h.offsets[r]) fidx.push_back(i);
    if (fidx.size() == 1) {  // 0-dimensional facet (d = 1)
      out.push_back({base, fidx[0]});
      continue;
    }
    // affine frame of the facet: coordinates w.r.t. independent directions
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < fidx.size(); ++i) dirs.push_back(pts[fidx[i]] - pts[fidx[0]]);
    Mat dm = Mat::from_columns(dirs);
    std::vector<std::size_t> piv = rref(dm);  // dm destroyed; pivots found on a copy
    Mat frame_cols = Mat::from_columns([&] {
      std::vector<RatVec> sel;
      Mat orig = Mat::from_columns(dirs);
      for (std::size_t c : piv) sel.push_back(orig.column(c));
      return sel;
    }());
    std::vector<RatVec> mapped;
    for (std::size_t i : fidx) {
      RatVec rel = pts[i] - pts[fidx[0]];
      auto coord = solve(frame_cols, rel);
      if (!coord) throw std::logic_error("triangulate_hull: facet frame solve failed");
      mapped.push_back(*coord);
    }
    for (const auto& tri : triangulate_hull(mapped, d - 1)) {
      std::vector<std::size_t> simplex{base};
      for (std::size_t t : tri) simplex.push_back(fidx[t]);
      out.push_back(simplex);
    }
  }
  return out;
}

// Volume by substitution recursion on the H-description; exact for bounded
// inputs, usable above the hull-triangulation dimension cutoff.
inline Rat volume_h_recursive(std::vector<IntVec> normals, RatVec offsets, std::size_t d) {
  // drop zero rows (infeasible -> 0), dedupe identical normals keeping min offset
  std::map<IntVec, Rat> tight;
  for (std::size_t r = 0; r < normals.size(); ++r) {
    bool zero = true;
    for (const Int& x : normals[r])
      if (x != 0) { zero = false; break; }
    if (zero) {
      if (offsets[r] < 0) return 0;
      continue;
    }
    IntVec a = normals[r];
    Int g = make_primitive(a);
    Rat b = offsets[r] / Rat(g);
    auto it = tight.find(a);
    if (it == tight.end()) tight.emplace(a, b);
    else it->second = std::min(it->second, b);
  }
  std::vector<IntVec> ns;
  RatVec bs;
  for (auto& [a, b] : tight) {
    ns.push_back(a);
    bs.push_back(b);
  }
  if (d == 0) return 1;
  if (d == 1) {
    std::optional<Rat> lo, hi;
    for (std::size_t r = 0; r < ns.size(); ++r) {
      Rat bound = bs[r] / Rat(ns[r][0]);
      if (ns[r][0] > 0) hi = hi ? std::min(*hi, bound) : bound;
      else lo = lo ? std::max(*lo, bound) : bound;
    }
    if (!lo || !hi) throw std::invalid_argument("volume_h_recursive: unbounded");
    return *hi > *lo ? *hi - *lo : Rat(0);
  }
  Rat total = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (bs[i] == 0) continue;  // pyramid from the origin has zero height
    std::size_t p = 0;
    while (ns[i][p] == 0) ++p;
    Int piv = ns[i][p];
    // substitute x_p = (b_i - sum_{l != p} a_il x_l) / piv into the others
    std::vector<IntVec> sub_n;
    RatVec sub_b;
    for (std::size_t r = 0; r < ns.size(); ++r) {
      if (r == i) continue;
      RatVec row(d - 1);
      Rat rb = bs[r] - Rat(ns[r][p]) * bs[i] / Rat(piv);
      std::size_t c2 = 0;
      for (std::size_t c = 0; c < d; ++c) {
        if (c == p) continue;
        row[c2++] = Rat(ns[r][c]) - Rat(ns[r][p]) * Rat(ns[i][c]) / Rat(piv);
      }
      auto [iv, den_] = scale_to_integer(row);
      sub_n.push_back(iv);
      sub_b.push_back(rb * Rat(den_));
    }
    total += bs[i] * volume_h_recursive(sub_n, sub_b, d - 1) / Rat(abs_int(piv));
  }
  return total / Rat(Int(d));
}

struct VolumeResult {
  Rat value;
  bool full_dim = false;
};

inline VolumeResult volume_detailed(const VPoly& v) {
  std::vector<RatVec> pts = dedupe_points(v.pts);
  std::size_t d = v.ambient;
  if (pts.empty() || affine_rank(pts) < d) return {Rat(0), false};
  if (d == 0) return {Rat(1), true};
  if (pts.size() == d + 1) {
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(pts[i] - pts[0]);
    return {abs_rat(det(Mat::from_columns(dirs))) / Rat(factorial(d)), true};
  }
  if (d <= 8) {
    Rat vol = 0;
    for (const auto& tri : triangulate_hull(pts, d)) {
      std::vector<RatVec> dirs;
      for (std::size_t i = 1; i < tri.size(); ++i) dirs.push_back(pts[tri[i]] - pts[tri[0]]);
      vol += abs_rat(det(Mat::from_columns(dirs)));
    }
    return {vol / Rat(factorial(d)), true};
  }
  HPoly h = hull_to_h(VPoly{d, pts});
  return {volume_h_recursive(h.normals, h.offsets, d), true};
}

inline Rat volume_lattice_coords(const VPoly& v) { return volume_detailed(v).value; }

// --- tangent cones ---------------------------------------------------------

inline Cone tangent_cone(const VPoly& v, const RatVec& vertex) {
  HPoly h = hull_to_h(v);
  std::vector<IntVec> tight;
  for (std::size_t r = 0; r < h.rows(); ++r)
    if (dot(to_rat_vec(h.normals[r]), vertex) == h.offsets[r]) tight.push_back(h.normals[r]);
  bool is_vertex = false;
  if (tight.size() >= v.ambient) {
    Mat m(tight.size(), v.ambient);
    for (std::size_t r = 0; r < tight.size(); ++r)
      for (std::size_t c = 0; c < v.ambient; ++c) m.at(r, c) = Rat(tight[r][c]);
    is_vertex = rank(m) == v.ambient;
  }
  if (!is_vertex || !hpoly_contains(h, vertex))
    throw std::invalid_argument("tangent_cone: not a vertex");
  Cone cone;
  cone.apex = vertex;
  std::vector<IntVec> rays = cone_rays(tight, v.ambient);
  cone.gens = IMat(v.ambient, rays.size());
  for (std::size_t c = 0; c < rays.size(); ++c)
    for (std::size_t r = 0; r < v.ambient; ++r) cone.gens.at(r, c) = rays[c][r];
  return cone;
}

// --- chambers and open faces ------------------------------------------------

struct Hyperplane {
  IntVec normal;
  Rat offset;  // { x : normal . x = offset }
};

struct Chamber {
  VPoly closure_v;
  HPoly closure_h;
  std::string sign_vector;
};

inline RatVec vertex_centroid(const std::vector<RatVec>& pts) {
  RatVec c(pts[0].size(), Rat(0));
  for (const RatVec& p : pts) c = c + p;
  for (Rat& x : c) x /= Rat(Int(pts.size()));
  return c;
}

// Cut Q by each hyperplane in turn, splitting only cells whose interior the
// hyperplane actually crosses; output ordered by lexicographic sign vector.
inline std::vector<Chamber> chamber_decomposition(const VPoly& q,
                                                  const std::vector<Hyperplane>& planes) {
  struct Cell {
    std::vector<RatVec> verts;
    std::vector<IntVec> extra_n;  // accumulated cut rows
    RatVec extra_b;
  };
  HPoly qh = hull_to_h(q);
  std::vector<Cell> cells{{dedupe_points(q.pts), {}, {}}};
  for (const Hyperplane& pl : planes) {
    std::vector<Cell> next;
    for (Cell& cell : cells) {
      bool below = false, above = false;
      for (const RatVec& v : cell.verts) {
        int sg = sign(dot(to_rat_vec(pl.normal), v) - pl.offset);
        below |= sg < 0;
        above |= sg > 0;
      }
      if (!(below && above)) {
        next.push_back(std::move(cell));
        continue;
      }
      for (int side = 0; side < 2; ++side) {
        Cell half = cell;
        IntVec n = pl.normal;
        Rat b = pl.offset;
        if (side == 1) {
          for (Int& x : n) x = -x;
          b = -b;
        }
        half.extra_n.push_back(n);
        half.extra_b.push_back(b);
        HPoly hh = qh;
        hh.normals.insert(hh.normals.end(), half.extra_n.begin(), half.extra_n.end());
        hh.offsets.insert(hh.offsets.end(), half.extra_b.begin(), half.extra_b.end());
        half.verts = h_to_hull(hh).pts;
        next.push_back(std::move(half));
      }
    }
    cells = std::move(next);
  }

  std::vector<Chamber> out;
  for (const Cell& cell : cells) {
    Chamber ch;
    ch.closure_v = VPoly{q.ambient, cell.verts};
    ch.closure_h = hull_to_h(ch.closure_v);
    RatVec inner = vertex_centroid(cell.verts);
    for (const Hyperplane& pl : planes)
      ch.sign_vector += dot(to_rat_vec(pl.normal), inner) < pl.offset ? '-' : '+';
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) {
    if (a.sign_vector != b.sign_vector) return a.sign_vector < b.sign_vector;
    return lex_less(a.closure_v.pts[0], b.closure_v.pts[0]);
  });
  return out;
}

// A relatively open face of the chamber complex: closure vertex set, owning
// chamber, and the owner's facet rows to be made strict on the closure.
struct OpenFace {
  std::vector<RatVec> verts;
  std::size_t dim = 0;
  std::size_t owner = 0;
  std::vector<std::size_t> strict_rows;
};

inline std::vector<OpenFace> open_face_decomposition(const std::vector<Chamber>& chambers) {
  std::map<std::vector<RatVec>, OpenFace> found;
  for (std::size_t ci = 0; ci < chambers.size(); ++ci) {
    const Chamber& ch = chambers[ci];
    const HPoly& h = ch.closure_h;
    const std::vector<RatVec>& verts = ch.closure_v.pts;
    std::vector<std::uint64_t> vmask(verts.size(), 0);
    if (h.rows() > 64) throw std::logic_error("open_face_decomposition: too many facets");
    for (std::size_t vi = 0; vi < verts.size(); ++vi)
      for (std::size_t r = 0; r < h.rows(); ++r)
        if (dot(to_rat_vec(h.normals[r]), verts[vi]) == h.offsets[r])
          vmask[vi] |= std::uint64_t(1) << r;

    std::set<std::uint64_t> masks;
    std::vector<std::uint64_t> queue{0};
    masks.insert(0);
    while (!queue.empty()) {
      std::uint64_t m = queue.back();
      queue.pop_back();
      for (std::size_t r = 0; r < h.rows(); ++r) {
        std::uint64_t m2 = m | (std::uint64_t(1) << r);
        if (masks.count(m2)) continue;
        // closure: restrict to vertices tight on every row of m2, take their common rows
        std::uint64_t common = ~std::uint64_t(0);
        bool any = false;
        for (std::size_t vi = 0; vi < verts.size(); ++vi)
          if ((vmask[vi] & m2) == m2) {
            common &= vmask[vi];
            any = true;
          }
        if (!any) continue;
        if (masks.insert(common).second) queue.push_back(common);
      }
    }
    for (std::uint64_t m : masks) {
      std::vector<RatVec> fv;
      for (std::size_t vi = 0; vi < verts.size(); ++vi)
        if ((vmask[vi] & m) == m) fv.push_back(verts[vi]);
      fv = dedupe_points(std::move(fv));
      auto it = found.find(fv);
      if (it != found.end()) continue;  // already owned by a lower-index chamber
      OpenFace f;
      f.verts = fv;
      f.dim = affine_rank(fv);
      f.owner = ci;
      for (std::size_t r = 0; r < h.rows(); ++r) {
        bool tight_everywhere = true;
        for (const RatVec& p : fv)
          if (dot(to_rat_vec(h.normals[r]), p) != h.offsets[r]) {
            tight_everywhere = false;
            break;
          }
        if (!tight_everywhere) f.strict_rows.push_back(r);
      }
      found.emplace(std::move(fv), std::move(f));
    }
  }
  std::vector<OpenFace> out;
  for (auto& [key, f] : found) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const OpenFace& a, const OpenFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.verts < b.verts;
  });
  return out;
}

// relint membership against an owner chamber's facet rows
inline bool open_face_contains(const OpenFace& f, const Chamber& owner, const RatVec& x) {
  const HPoly& h = owner.closure_h;
  std::set<std::size_t> strict(f.strict_rows.begin(), f.strict_rows.end());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Rat lhs = dot(to_rat_vec(h.normals[r]), x);
    if (strict.count(r)) {
      if (lhs >= h.offsets[r]) return false;
    } else {
      if (lhs != h.offsets[r]) return false;
    }
  }
  return true;
}

}  // namespace ehrhart
