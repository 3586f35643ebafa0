// Slice valuations: slicing hyperplanes, fiber polytopes, per-chamber fiber
// volume polynomials, and the lattice sum E_L with dilation reuse.

#include "ehrhart/oracle.hpp"
#include "ehrhart/slice_valuation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ehrhart;

namespace {

RatVec rv(std::vector<int> v) {
  RatVec out;
  for (int x : v) out.push_back(Rat(x));
  return out;
}

Simplex simplex(std::vector<std::vector<int>> verts) {
  std::vector<RatVec> v;
  for (auto& r : verts) v.push_back(rv(r));
  return make_simplex(std::move(v));
}

Simplex standard_simplex(std::size_t d) {
  std::vector<RatVec> verts{RatVec(d, Rat(0))};
  for (std::size_t i = 0; i < d; ++i) {
    RatVec v(d, Rat(0));
    v[i] = 1;
    verts.push_back(v);
  }
  return make_simplex(std::move(verts));
}

Subspace span_e1(std::size_t d) {
  RatVec v(d, Rat(0));
  v[0] = 1;
  return saturate({v}, d);
}

Simplex dilate(const Simplex& s, const Int& m) {
  std::vector<RatVec> verts;
  for (const RatVec& v : s.verts) verts.push_back(Rat(m) * v);
  return make_simplex(std::move(verts));
}

std::mt19937_64 seeded_rng() { return std::mt19937_64(20260815); }

Simplex random_simplex(std::mt19937_64& rng, std::size_t d, int box, int maxden) {
  std::uniform_int_distribution<int> c(-box, box);
  std::uniform_int_distribution<int> dn(1, maxden);
  for (;;) {
    std::vector<RatVec> verts;
    for (std::size_t i = 0; i <= d; ++i) {
      RatVec v(d);
      for (Rat& x : v) x = Rat(c(rng), dn(rng));
      verts.push_back(v);
    }
    try {
      return make_simplex(std::move(verts));
    } catch (const std::invalid_argument&) {
    }
  }
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t d, std::size_t want_dim) {
  std::uniform_int_distribution<int> c(-2, 2);
  for (;;) {
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < want_dim; ++i) {
      RatVec v(d);
      for (Rat& x : v) x = Rat(c(rng));
      gens.push_back(v);
    }
    Subspace l = saturate(gens, d);
    if (l.dim() == want_dim) return l;
  }
}

}  // namespace

TEST_CASE("slicing hyperplanes of simple shadows") {
  Simplex t = standard_simplex(2);
  Subspace e1 = span_e1(2);
  Lattice lam = project_lattice(e1);
  auto planes = slicing_hyperplanes(t, e1, lam);
  // vertices project to 0, 1, 0: two distinct walls after deduplication
  REQUIRE(planes.size() == 2);
  CHECK(planes[0].normal == IntVec{Int(1)});
  CHECK(planes[0].offset == 0);
  CHECK(planes[1].offset == 1);

  // diagonal direction: (0,0) and the two unit vertices land on coordinates
  // 0, 1, 1, so two walls survive
  Subspace diag = saturate({rv({1, 1})}, 2);
  auto dplanes = slicing_hyperplanes(t, diag, project_lattice(diag));
  CHECK(dplanes.size() == 2);
}

TEST_CASE("parallel faces are skipped and equal shadows merged") {
  // project a 3-simplex onto the first two coordinates: the vertical edge
  // collapses to a point and is skipped, opposite slanted edges share lines
  Simplex s = simplex({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  Subspace plane = saturate({rv({1, 0, 0}), rv({0, 1, 0})}, 3);
  auto planes = slicing_hyperplanes(s, plane, project_lattice(plane));
  // surviving distinct lines: x = 0, y = 0, x + y = 2
  CHECK(planes.size() == 3);
}

TEST_CASE("fiber polytopes of the big triangle") {
  Simplex t = simplex({{0, 0}, {2, 0}, {0, 2}});
  Subspace e1 = span_e1(2);
  Lattice lam = project_lattice(e1);
  Mat lperp = to_mat(orth_complement(e1).sat_basis);
  VPoly f0 = fiber_polytope(t, e1, lam, lperp, RatVec{Rat(0)});
  CHECK(volume_lattice_coords(f0) == 2);
  VPoly f1 = fiber_polytope(t, e1, lam, lperp, RatVec{Rat(1)});
  CHECK(volume_lattice_coords(f1) == 1);
  VPoly f2 = fiber_polytope(t, e1, lam, lperp, RatVec{Rat(2)});
  CHECK(f2.pts.size() == 1);
  CHECK(volume_lattice_coords(f2) == 0);  // a point has zero length
  VPoly fout = fiber_polytope(t, e1, lam, lperp, RatVec{Rat(3)});
  CHECK(fout.pts.empty());
  VPoly fhalf = fiber_polytope(t, e1, lam, lperp, RatVec{Rat(1, 2)});
  CHECK(volume_lattice_coords(fhalf) == Rat(3, 2));
}

TEST_CASE("chamber phi is the fiber volume on each chamber") {
  Simplex t = simplex({{0, 0}, {2, 0}, {0, 2}});
  Subspace e1 = span_e1(2);
  SliceStructure st = build_slice_structure(t, e1);
  REQUIRE(st.chambers.size() == 1);
  REQUIRE(st.phi.size() == 1);
  CHECK(st.phi[0].total_degree() == 1);
  CHECK(st.phi[0].eval(RatVec{Rat(1, 2)}) == Rat(3, 2));
  CHECK(st.phi[0].eval(RatVec{Rat(0)}) == Rat(2));

  // an interior wall: projecting along (1,-1) sends the two far vertices to
  // opposite sides, so the shadow splits into two chambers
  Subspace anti = saturate({rv({1, -1})}, 2);
  SliceStructure st2 = build_slice_structure(t, anti);
  CHECK(st2.chambers.size() == 2);
  for (const Poly& f : st2.phi) CHECK(f.total_degree() <= 1);
}

TEST_CASE("phi agrees with direct fiber volumes at piece centroids") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t d = 2 + trial % 3;
    Simplex s = random_simplex(rng, d, 2, 2);
    std::size_t j = 1 + trial % 2;
    if (j >= d) j = 1;
    Subspace l = random_subspace(rng, d, j);
    SliceStructure st = build_slice_structure(s, l);
    Mat lperp = to_mat(orth_complement(l).sat_basis);
    for (const CachedPiece& p : st.pieces) {
      RatVec c = vertex_centroid(p.unit_pts);
      Rat direct = volume_lattice_coords(fiber_polytope(s, l, st.lambda, lperp, c));
      CHECK(st.phi[p.owner].eval(c) == direct);
    }
  }
}

TEST_CASE("eval_EL pinned examples") {
  CHECK(eval_EL(simplex({{0, 0}, {2, 0}, {0, 2}}), span_e1(2)) == 3);
  CHECK(eval_EL(standard_simplex(2), span_e1(2)) == 1);
  // full space: every fiber is a point of volume one, so E_L counts lattice
  // points
  CHECK(eval_EL(standard_simplex(2), full_subspace(2)) == 3);
  CHECK(eval_EL(simplex({{0, 0}, {2, 0}, {0, 2}}), full_subspace(2)) == 6);
  // fibers over 0 and 1: a segment of length 1/2 and a single point of
  // one-dimensional volume zero
  Simplex half = make_simplex({rv({0, 0}), rv({1, 0}), RatVec{Rat(0), Rat(1, 2)}});
  CHECK(eval_EL(half, span_e1(2)) == Rat(1, 2));
}

TEST_CASE("eval_EL equals the brute-force slice sum") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 14; ++trial) {
    std::size_t d = 2 + trial % 3;
    Simplex s = random_simplex(rng, d, 2, 2);
    std::size_t jwant = 1 + trial % 2;
    if (jwant >= d) jwant = 1;
    Subspace l = random_subspace(rng, d, jwant);
    CHECK(eval_EL(s, l) == el_bruteforce(s, l));
  }
}

TEST_CASE("dilated evaluation equals evaluation of the dilated simplex") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t d = 2 + trial % 2;
    Simplex s = random_simplex(rng, d, 2, 2);
    Subspace l = random_subspace(rng, d, 1 + trial % 2);
    SliceStructure st = build_slice_structure(s, l);
    for (Int m = 1; m <= 3; ++m) {
      Rat via_structure = eval_EL_dilated(st, m);
      Rat via_fresh = el_bruteforce(dilate(s, m), l);
      CHECK(via_structure == via_fresh);
    }
  }
}

TEST_CASE("full-space slices count lattice points") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t d = 2 + trial % 2;
    Simplex s = random_simplex(rng, d, 2, 2);
    CHECK(eval_EL(s, full_subspace(d)) == count_points(s, 1));
  }
}

TEST_CASE("univariate closed form matches interpolation") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t d = 3 + trial % 2;
    Simplex s = random_simplex(rng, d, 2, 2);
    Subspace l = random_subspace(rng, d, 1);
    SliceStructure st = build_slice_structure(s, l);  // interpolation route
    Rat vol = abs_rat(det(edge_matrix(s))) / Rat(factorial(d));
    RatVec knots;
    Mat b = st.lambda.basis();
    for (const RatVec& v : s.verts) knots.push_back(projection_coords(b, v)[0]);
    for (std::size_t c = 0; c < st.chambers.size(); ++c) {
      Rat lo = st.chambers[c].closure_v.pts.front()[0];
      Rat hi = st.chambers[c].closure_v.pts.back()[0];
      Poly dd = chamber_phi_univariate(s, knots, (lo + hi) / Rat(2), vol);
      // both have degree < d, so agreement at d+1 points forces equality;
      // check at interior points to stay inside the chamber
      for (int q = 1; q <= int(d) + 1; ++q) {
        Rat x = lo + (hi - lo) * Rat(q, int(d) + 2);
        CHECK(dd.eval(RatVec{x}) == st.phi[c].eval(RatVec{x}));
      }
    }
  }
}

TEST_CASE("structure caching is consistent across repeated dilations") {
  Simplex s = simplex({{0, 0, 0}, {3, 1, 0}, {0, 2, 1}, {1, 0, 2}});
  Subspace l = saturate({rv({1, 1, 0})}, 3);
  SliceStructure st = build_slice_structure(s, l);
  Rat first = eval_EL_dilated(st, 2);
  Rat again = eval_EL_dilated(st, 2);
  CHECK(first == again);
  CHECK(eval_EL_dilated(st, 1) == el_bruteforce(s, l));
}
