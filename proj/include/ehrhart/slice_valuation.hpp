#pragma once

// The slice valuation E_L: project the simplex onto L in lattice coordinates,
// cut the shadow into chambers on which the fiber volume is one polynomial,
// decompose into relatively open pieces, and sum the owner polynomial over
// the lattice points of each piece via generating functions.  The chamber
// structure is computed once per (simplex, L) and reused for every dilation:
// everything scales linearly and phi_m(x) = m^{d-j} phi(x/m).

#include "ehrhart/genfun.hpp"
#include "ehrhart/lattice.hpp"
#include "ehrhart/polynomial.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/summation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ehrhart {

// hyperplanes A_G = pr(aff G) over (j-1)-faces G whose hull is not parallel
// to the fiber direction; in Lambda-coordinates, deduplicated and sorted
inline std::vector<Hyperplane> slicing_hyperplanes(const Simplex& s, const Subspace& l,
                                                   const Lattice& lambda) {
  std::size_t j = l.dim();
  if (j < 1) throw std::invalid_argument("slicing_hyperplanes: dim L must be >= 1");
  Mat b = lambda.basis();
  std::vector<RatVec> proj;
  for (const RatVec& v : s.verts) proj.push_back(projection_coords(b, v));
  std::set<std::pair<IntVec, Rat>> seen;
  for (const auto& g : faces(s.dim, j - 1)) {
    std::vector<RatVec> gp;
    for (std::size_t i : g) gp.push_back(proj[i]);
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < gp.size(); ++i) dirs.push_back(gp[i] - gp[0]);
    if (j >= 2 && rank(Mat::from_columns(dirs)) != j - 1) continue;  // parallel: skip
    IntVec normal;
    if (j == 1) {
      normal = IntVec{Int(1)};
    } else {
      std::vector<RatVec> rows;
      for (const RatVec& dvec : dirs) rows.push_back(dvec);
      auto ker = kernel(Mat::from_rows(rows));
      if (ker.size() != 1) continue;
      auto [iv, den_] = scale_to_integer(ker[0]);
      make_primitive(iv);
      normal = iv;
    }
    if (lex_negative(normal))
      for (Int& x : normal) x = -x;
    Rat offset = dot(to_rat_vec(normal), gp[0]);
    seen.insert({normal, offset});
  }
  std::vector<Hyperplane> out;
  for (const auto& [n, c] : seen) out.push_back(Hyperplane{n, c});
  return out;
}

// slice of the simplex over the Lambda-point x, as a point set in the
// coordinates of the lattice basis of Z^d intersect L-perp
inline VPoly fiber_polytope(const Simplex& s, const Subspace& l, const Lattice& lambda,
                            const Mat& lperp_basis, const RatVec& x) {
  std::size_t d = s.dim, j = l.dim();
  Mat b = lambda.basis();
  Mat gram = b.transposed() * b;
  Mat pr = inverse(gram) * b.transposed();  // j x d: Lambda-coordinates of projection
  std::vector<RatVec> points;
  for (std::size_t fdim = 0; fdim <= j && fdim <= d; ++fdim) {
    for (const auto& face : faces(d, fdim)) {
      std::size_t nf = face.size();
      Mat m(j + 1, nf);
      RatVec rhs(j + 1);
      for (std::size_t c = 0; c < nf; ++c) {
        RatVec pc = pr * s.verts[face[c]];
        for (std::size_t r = 0; r < j; ++r) m.at(r, c) = pc[r];
        m.at(j, c) = 1;
      }
      for (std::size_t r = 0; r < j; ++r) rhs[r] = x[r];
      rhs[j] = 1;
      if (rank(m) != nf) continue;  // intersection not a single point
      auto lam = solve(m, rhs);
      if (!lam) continue;
      bool nonneg = true;
      for (const Rat& lv : *lam) nonneg &= lv >= 0;
      if (!nonneg) continue;
      RatVec p(d, Rat(0));
      for (std::size_t c = 0; c < nf; ++c) p = p + (*lam)[c] * s.verts[face[c]];
      points.push_back(std::move(p));
    }
  }
  VPoly fiber;
  fiber.ambient = d - j;
  if (points.empty()) return fiber;
  for (const RatVec& p : points) {
    auto xi = solve(lperp_basis, p - points[0]);
    if (!xi) throw std::logic_error("fiber_polytope: point outside L-perp frame");
    fiber.pts.push_back(*xi);
  }
  fiber.pts = dedupe_points(std::move(fiber.pts));
  return fiber;
}

// one signed unimodular cone of a piece's vertex, in the reduced frame
struct PieceCone {
  int sign = 1;
  IMat gens;
  Mat k_inv;
  std::vector<RatVec> eps_rows;  // row i: eps coefficients of apex coordinate i
  std::size_t vert = 0;          // index into the reduced point list
};

struct CachedPiece {
  std::vector<RatVec> unit_pts;  // closure vertices in Lambda-coordinates, unit dilation
  std::size_t owner = 0;
  std::size_t fdim = 0;
  // affine-hull lattice data: constraints a_rows . y = m * c_unit
  IMat a_rows;
  IMat hnf_h, hnf_u;
  RatVec c_unit;
  IMat dirs;                      // direction-lattice basis columns
  std::vector<RatVec> unit_red;   // reduced coordinates w.r.t. base unit_pts[0]
  bool cones_ready = false;
  std::vector<PieceCone> cones;   // filled on first use when fdim >= 1
};

struct SliceStructure {
  Simplex simplex;
  Subspace l;
  Lattice lambda;
  std::size_t j = 0;
  VPoly q;
  std::vector<Hyperplane> planes;
  std::vector<Chamber> chambers;
  std::vector<Poly> phi;  // per chamber, j variables, degree <= d - j
  std::vector<CachedPiece> pieces;
};

// interpolation grid: degree-r principal lattice on a full-dimensional
// simplex picked from the chamber's vertices, shrunk toward the chamber's
// vertex centroid so every node is interior
inline std::vector<RatVec> chamber_grid(const Chamber& ch, std::size_t j, unsigned r) {
  const std::vector<RatVec>& verts = ch.closure_v.pts;
  std::vector<RatVec> simplex{verts[0]};
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < verts.size() && simplex.size() < j + 1; ++i) {
    dirs.push_back(verts[i] - verts[0]);
    if (rank(Mat::from_columns(dirs)) == dirs.size()) simplex.push_back(verts[i]);
    else dirs.pop_back();
  }
  if (simplex.size() != j + 1) throw std::logic_error("chamber_grid: chamber not full-dimensional");
  RatVec c = vertex_centroid(verts);
  for (RatVec& p : simplex) p = c + Rat(1, 2) * (p - c);
  std::vector<RatVec> nodes;
  std::vector<unsigned> beta(j + 1, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == j) {
      beta[j] = left;
      RatVec node(j, Rat(0));
      for (std::size_t v = 0; v <= j; ++v)
        if (beta[v]) node = node + Rat(Int(beta[v]), Int(r == 0 ? 1 : r)) * simplex[v];
      if (r == 0) node = simplex[0];
      nodes.push_back(node);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      beta[i] = e;
      self(self, i + 1, left - e);
    }
    beta[i] = 0;
  };
  rec(rec, 0, r);
  return nodes;
}

// fiber volume as a function of the slice position, restricted to a chamber:
// exact polynomial interpolation on a unisolvent interior grid, re-checked at
// an extra interior point
inline Poly chamber_phi(const Simplex& s, const Subspace& l, const Lattice& lambda,
                        const Mat& lperp_basis, const Chamber& ch) {
  std::size_t d = s.dim, j = l.dim();
  unsigned r = unsigned(d - j);
  std::vector<RatVec> nodes = chamber_grid(ch, j, r);
  RatVec values;
  for (const RatVec& x : nodes)
    values.push_back(volume_lattice_coords(fiber_polytope(s, l, lambda, lperp_basis, x)));
  Poly p = interpolate_polynomial(nodes, values, j, r);
  RatVec c = vertex_centroid(ch.closure_v.pts);
  RatVec extra = c + Rat(1, 7) * (nodes[0] - c);
  Rat direct = volume_lattice_coords(fiber_polytope(s, l, lambda, lperp_basis, extra));
  if (p.eval(extra) != direct)
    throw std::logic_error("chamber_phi: interpolation residual check failed");
  return p;
}

// closed form for one-dimensional L: the fiber-volume function of a simplex
// between consecutive projected-vertex knots is a B-spline segment,
// vol * d * [t_0..t_d] (t - xi)_+^{d-1}, evaluated by confluent divided
// differences over polynomials in xi
inline Poly chamber_phi_univariate(const Simplex& s, const RatVec& knots_in, const Rat& inside,
                                   const Rat& vol) {
  std::size_t d = s.dim;
  RatVec knots = knots_in;
  std::sort(knots.begin(), knots.end());
  // dense univariate coefficients, length d (degree <= d-1)
  auto right_value = [&](const Rat& t, unsigned deriv) -> RatVec {
    RatVec c(d, Rat(0));
    if (t <= inside) return c;  // knots left of the chamber contribute 0
    // C(d-1, deriv) * (t - xi)^{d-1-deriv} expanded in xi
    unsigned e = unsigned(d - 1) - deriv;
    for (unsigned i = 0; i <= e; ++i) {
      // coefficient of xi^i: C(e, i) t^{e-i} (-1)^i
      Rat coef = Rat(binomial(e, i)) * pow_rat(t, e - i) * (i % 2 ? Rat(-1) : Rat(1));
      c[i] = coef * Rat(binomial(d - 1, deriv));
    }
    return c;
  };
  std::size_t n = knots.size();
  std::vector<std::vector<RatVec>> dd(n, std::vector<RatVec>(n));
  for (std::size_t i = 0; i < n; ++i) dd[i][i] = right_value(knots[i], 0);
  for (std::size_t len = 1; len < n; ++len)
    for (std::size_t i = 0; i + len < n; ++i) {
      std::size_t k2 = i + len;
      if (knots[i] == knots[k2]) {
        dd[i][k2] = right_value(knots[i], unsigned(len));
      } else {
        RatVec diff(d);
        for (std::size_t c = 0; c < d; ++c)
          diff[c] = (dd[i + 1][k2][c] - dd[i][k2 - 1][c]) / (knots[k2] - knots[i]);
        dd[i][k2] = diff;
      }
    }
  Poly p = Poly::zero(1);
  for (std::size_t c = 0; c < d; ++c)
    p.add_term(Expo{unsigned(c)}, dd[0][n - 1][c] * vol * Rat(Int(d)));
  return p;
}

inline SliceStructure build_slice_structure(const Simplex& s, const Subspace& l) {
  if (l.dim() < 1) throw std::invalid_argument("build_slice_structure: dim L must be >= 1");
  SliceStructure st;
  st.simplex = s;
  st.l = l;
  st.lambda = project_lattice(l);
  st.j = l.dim();
  st.q = project_simplex(s, l, st.lambda);
  st.planes = slicing_hyperplanes(s, l, st.lambda);
  st.chambers = chamber_decomposition(st.q, st.planes);
  Subspace lperp = orth_complement(l);
  Mat lperp_basis = to_mat(lperp.sat_basis);

  bool univariate_closed_form = st.j == 1 && s.dim - st.j > 8;
  Rat vol;
  RatVec knots;
  if (univariate_closed_form) {
    vol = abs_rat(det(edge_matrix(s))) / Rat(factorial(s.dim));
    Mat b = st.lambda.basis();
    for (const RatVec& v : s.verts) knots.push_back(projection_coords(b, v)[0]);
  }
  for (const Chamber& ch : st.chambers) {
    if (univariate_closed_form) {
      Rat lo = ch.closure_v.pts.front()[0], hi = ch.closure_v.pts.back()[0];
      st.phi.push_back(chamber_phi_univariate(s, knots, (lo + hi) / Rat(2), vol));
    } else {
      st.phi.push_back(chamber_phi(s, l, st.lambda, lperp_basis, ch));
    }
    if (st.phi.back().total_degree() > s.dim - st.j)
      throw std::logic_error("build_slice_structure: phi degree bound violated");
  }

  for (const OpenFace& f : open_face_decomposition(st.chambers)) {
    CachedPiece p;
    p.unit_pts = f.verts;
    p.owner = f.owner;
    p.fdim = f.dim;
    std::vector<RatVec> dirs;
    for (std::size_t i = 1; i < f.verts.size(); ++i) dirs.push_back(f.verts[i] - f.verts[0]);
    Subspace span = saturate(dirs, st.j);
    Subspace comp = orth_complement(span);
    p.a_rows = comp.sat_basis.transposed();
    p.c_unit = RatVec(p.a_rows.rows, Rat(0));
    for (std::size_t r = 0; r < p.a_rows.rows; ++r)
      for (std::size_t c = 0; c < st.j; ++c)
        p.c_unit[r] += Rat(p.a_rows.at(r, c)) * f.verts[0][c];
    auto [h, u] = hnf_with_transform(p.a_rows);
    p.hnf_h = h;
    p.hnf_u = u;
    p.dirs = span.sat_basis;
    if (p.fdim >= 1) {
      Mat b = to_mat(p.dirs);
      for (const RatVec& v : f.verts) {
        auto xi = solve(b, v - f.verts[0]);
        if (!xi) throw std::logic_error("build_slice_structure: piece frame solve failed");
        p.unit_red.push_back(*xi);
      }
    }
    st.pieces.push_back(std::move(p));
  }
  return st;
}

// integer solution of piece.a_rows . y = m * c_unit, or nothing
inline std::optional<IntVec> piece_base(const CachedPiece& p, const Int& m, std::size_t j) {
  IntVec y0(j, Int(0));
  if (p.a_rows.rows == 0) return y0;
  RatVec residue(p.c_unit.size());
  for (std::size_t r = 0; r < residue.size(); ++r) {
    residue[r] = Rat(m) * p.c_unit[r];
    if (!is_integer(residue[r])) return std::nullopt;
  }
  const IMat& h = p.hnf_h;
  IntVec t(h.cols, Int(0));
  for (std::size_t col = 0; col < h.cols; ++col) {
    std::size_t prow = h.rows;
    for (std::size_t r = 0; r < h.rows; ++r)
      if (h.at(r, col) != 0) { prow = r; break; }
    if (prow == h.rows) break;
    Rat need = residue[prow] / Rat(h.at(prow, col));
    if (!is_integer(need)) return std::nullopt;
    t[col] = num(need);
    for (std::size_t r = 0; r < h.rows; ++r) residue[r] -= Rat(h.at(r, col) * t[col]);
  }
  for (const Rat& x : residue)
    if (x != 0) return std::nullopt;
  for (std::size_t i = 0; i < j; ++i)
    for (std::size_t c = 0; c < h.cols; ++c) y0[i] += p.hnf_u.at(i, c) * t[c];
  return y0;
}

inline void build_piece_cones(CachedPiece& p) {
  if (p.cones_ready) return;
  p.cones_ready = true;
  std::size_t fd = p.fdim;
  VPoly red{fd, p.unit_red};
  VPoly hull = hull_vertices(red);
  HPoly h = hull_to_h(hull);
  for (const RatVec& vert : hull.pts) {
    std::size_t vi = 0;
    while (vi < p.unit_red.size() && p.unit_red[vi] != vert) ++vi;
    if (vi == p.unit_red.size()) throw std::logic_error("build_piece_cones: hull vertex not found");
    std::vector<IntVec> tight;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (dot(to_rat_vec(h.normals[r]), vert) == h.offsets[r]) tight.push_back(h.normals[r]);
    std::vector<IntVec> rays = cone_rays(tight, fd);
    Mat eta(fd, rays.size());
    for (std::size_t c = 0; c < rays.size(); ++c)
      for (std::size_t r = 0; r < fd; ++r) eta.at(r, c) = Rat(rays[c][r]);
    for (const IMat& simp : triangulate_cone(rays, tight, fd)) {
      for (const SignedCone& sc : unimodular_decompose(simp)) {
        PieceCone pc;
        pc.sign = sc.sign;
        pc.gens = sc.gens;
        pc.k_inv = inverse(to_mat(sc.gens));
        Mat ep = pc.k_inv * eta;
        for (std::size_t r = 0; r < fd; ++r) {
          // apex sits at vertex + eta(eps): the inward shift makes every
          // ceiling strict, so the cones enumerate the relative interior
          pc.eps_rows.push_back(ep.row(r));
        }
        pc.vert = vi;
        p.cones.push_back(std::move(pc));
      }
    }
  }
}

// SRF of the m-dilated relatively open piece in Lambda-coordinates
inline Srf piece_srf(CachedPiece& p, const Int& m, std::size_t j) {
  auto y0 = piece_base(p, m, j);
  if (!y0) return {};
  if (p.fdim == 0) {
    return {SrfTerm{Rat(1), *y0, {}}};
  }
  build_piece_cones(p);
  // reduced coordinates of m * pts w.r.t. base y0: m * unit_red + shift
  Mat b = to_mat(p.dirs);
  RatVec mp0(j);
  for (std::size_t i = 0; i < j; ++i) mp0[i] = Rat(m) * p.unit_pts[0][i] - Rat((*y0)[i]);
  auto shift = solve(b, mp0);
  if (!shift) throw std::logic_error("piece_srf: base shift solve failed");
  Srf terms;
  for (const PieceCone& pc : p.cones) {
    RatVec apex(p.fdim);
    for (std::size_t i = 0; i < p.fdim; ++i)
      apex[i] = Rat(m) * p.unit_red[pc.vert][i] + (*shift)[i];
    RatVec coords = pc.k_inv * apex;
    IntVec m0(p.fdim);
    for (std::size_t i = 0; i < p.fdim; ++i)
      m0[i] = eps_ceil(EpsNum{coords[i], pc.eps_rows[i]});
    IntVec a_red(p.fdim, Int(0));
    for (std::size_t r = 0; r < p.fdim; ++r)
      for (std::size_t c = 0; c < p.fdim; ++c) a_red[r] += pc.gens.at(r, c) * m0[c];
    // embed the reduced-coordinate terms through the affine frame
    SrfTerm t;
    t.coef = Rat(pc.sign);
    t.a = *y0;
    for (std::size_t r = 0; r < j; ++r)
      for (std::size_t c = 0; c < p.fdim; ++c) t.a[r] += p.dirs.at(r, c) * a_red[c];
    for (std::size_t c = 0; c < p.fdim; ++c) {
      IntVec bvec(j, Int(0));
      for (std::size_t r = 0; r < j; ++r)
        for (std::size_t cc = 0; cc < p.fdim; ++cc)
          bvec[r] += p.dirs.at(r, cc) * pc.gens.at(cc, c);
      t.dens.emplace_back(std::move(bvec), 1);
    }
    terms.push_back(std::move(t));
  }
  return merge_srf(std::move(terms));
}

inline Rat eval_EL_dilated(SliceStructure& st, const Int& m) {
  std::size_t d = st.simplex.dim;
  Rat total = 0;
  std::vector<Poly> phi_m;
  for (const Poly& f : st.phi) phi_m.push_back(dilate_poly(f, Rat(m), unsigned(d - st.j)));
  for (CachedPiece& p : st.pieces) {
    const Poly& f = phi_m[p.owner];
    if (p.fdim == 0) {
      auto y0 = piece_base(p, m, st.j);
      if (!y0) continue;
      // the base solve has a unique solution: it must be the scaled point itself
      total += f.eval(to_rat_vec(*y0));
      continue;
    }
    Srf s = piece_srf(p, m, st.j);
    if (s.empty()) continue;
    total += specialize_at_one(apply_diff_operator(f, s));
  }
  return total;
}

// E_L for dim L >= 1 (the zero subspace is the plain volume and is handled by
// the caller)
inline Rat eval_EL(const Simplex& s, const Subspace& l) {
  SliceStructure st = build_slice_structure(s, l);
  return eval_EL_dilated(st, 1);
}

}  // namespace ehrhart
