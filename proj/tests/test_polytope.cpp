// Polytope layer: simplices, hull <-> halfspace conversion, cones, volumes.

#include "ehrhart/polytope.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ehrhart;

namespace {

RatVec rv(std::vector<int> v) {
  RatVec out;
  for (int x : v) out.push_back(Rat(x));
  return out;
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

}  // namespace

TEST_CASE("make_simplex validation") {
  CHECK_THROWS_WITH(make_simplex({rv({0, 0}), rv({1, 0}), rv({1, 0})}),
                    "simplex not full-dimensional");
  CHECK_THROWS_WITH(make_simplex({rv({0, 0}), rv({1, 0})}), "simplex not full-dimensional");
  CHECK_THROWS_WITH(make_simplex({rv({0, 0}), rv({1, 0}), rv({2, 0})}),
                    "simplex not full-dimensional");
  Simplex s = standard_simplex(3);
  CHECK(s.dim == 3);
  CHECK(abs_rat(det(edge_matrix(s))) == 1);
}

TEST_CASE("faces and linear spans") {
  auto f1 = faces(2, 1);
  REQUIRE(f1.size() == 3);
  CHECK(f1[0] == std::vector<std::size_t>{0, 1});
  CHECK(f1[2] == std::vector<std::size_t>{1, 2});
  CHECK(faces(5, 3).size() == 15);
  CHECK(faces(3, 0).size() == 4);

  Simplex t = standard_simplex(2);
  Subspace edge01 = lin_face(t, {0, 1});  // direction e1
  CHECK(edge01.dim() == 1);
  CHECK(edge01.sat_basis.column(0) == IntVec{Int(1), Int(0)});
  CHECK(lin_face(t, {0}).dim() == 0);
  CHECK(lin_face(t, {0, 1, 2}).dim() == 2);
}

TEST_CASE("hull_to_h and h_to_hull round trip") {
  VPoly square{2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}};
  HPoly h = hull_to_h(square);
  CHECK(h.rows() == 4);
  CHECK(hpoly_contains(h, RatVec{Rat(1, 2), Rat(1, 2)}));
  CHECK(!hpoly_contains(h, RatVec{Rat(3, 2), Rat(1, 2)}));
  VPoly back = h_to_hull(h);
  CHECK(back.pts == dedupe_points(square.pts));

  // interior points are dropped by vertex recovery
  VPoly with_interior = square;
  with_interior.pts.push_back(RatVec{Rat(1, 2), Rat(1, 3)});
  CHECK(hull_vertices(with_interior).pts == dedupe_points(square.pts));

  // one-dimensional case
  VPoly seg{1, {RatVec{Rat(2)}, RatVec{Rat(-1)}, RatVec{Rat(0)}}};
  HPoly hs = hull_to_h(seg);
  CHECK(hs.rows() == 2);
  CHECK(h_to_hull(hs).pts == std::vector<RatVec>{RatVec{Rat(-1)}, RatVec{Rat(2)}});
}

TEST_CASE("boundedness detection") {
  Simplex t = standard_simplex(2);
  CHECK(hpoly_bounded(hull_to_h(VPoly{2, t.verts})));
  HPoly orthant;
  orthant.ambient = 2;
  orthant.normals = {IntVec{Int(-1), Int(0)}, IntVec{Int(0), Int(-1)}};
  orthant.offsets = {Rat(0), Rat(0)};
  CHECK(!hpoly_bounded(orthant));
  CHECK_THROWS(h_to_hull(orthant));
}

TEST_CASE("cone rays") {
  // nonnegative orthant in R^3
  std::vector<IntVec> rows{IntVec{Int(-1), Int(0), Int(0)}, IntVec{Int(0), Int(-1), Int(0)},
                           IntVec{Int(0), Int(0), Int(-1)}};
  auto rays = cone_rays(rows, 3);
  REQUIRE(rays.size() == 3);
  CHECK(rays[0] == IntVec{Int(0), Int(0), Int(1)});
  CHECK(rays[2] == IntVec{Int(1), Int(0), Int(0)});
}

TEST_CASE("tangent cones of the standard triangle") {
  VPoly t{2, standard_simplex(2).verts};
  Cone at_origin = tangent_cone(t, rv({0, 0}));
  auto g = at_origin.gens;
  REQUIRE(g.cols == 2);
  CHECK(g.column(0) == IntVec{Int(0), Int(1)});
  CHECK(g.column(1) == IntVec{Int(1), Int(0)});
  Cone at_e1 = tangent_cone(t, rv({1, 0}));
  REQUIRE(at_e1.gens.cols == 2);
  CHECK(at_e1.gens.column(0) == IntVec{Int(-1), Int(0)});
  CHECK(at_e1.gens.column(1) == IntVec{Int(-1), Int(1)});
  CHECK_THROWS(tangent_cone(t, rv({5, 5})));
}

TEST_CASE("triangulation of hulls") {
  // unit square splits into 2 triangles with total area 1
  std::vector<RatVec> square{rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})};
  auto tris = triangulate_hull(square, 2);
  CHECK(tris.size() == 2);
  Rat total = 0;
  for (const auto& tri : tris) {
    std::vector<RatVec> p;
    for (std::size_t i : tri) p.push_back(square[i]);
    total += abs_rat(det(edge_matrix(Simplex{2, p}))) / Rat(2);
  }
  CHECK(total == 1);
}

TEST_CASE("volumes") {
  CHECK(volume_lattice_coords(VPoly{3, standard_simplex(3).verts}) == Rat(1, 6));
  VPoly square{2, {rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})}};
  CHECK(volume_lattice_coords(square) == 1);
  VPoly big{2, {rv({0, 0}), rv({2, 0}), rv({0, 2}), rv({2, 2})}};
  CHECK(volume_lattice_coords(big) == 4);
  // lower-dimensional point sets have zero d-volume
  VPoly flat{2, {rv({0, 0}), rv({1, 1}), rv({2, 2})}};
  VolumeResult vr = volume_detailed(flat);
  CHECK(vr.value == 0);
  CHECK(!vr.full_dim);
  // a single point in dimension zero counts as volume 1
  CHECK(volume_lattice_coords(VPoly{0, {RatVec{}}}) == 1);
  CHECK(volume_lattice_coords(VPoly{2, {}}) == 0);
}

TEST_CASE("halfspace-recursion volume agrees with triangulation") {
  std::mt19937_64 rng(20260815);
  std::uniform_int_distribution<int> c(-3, 3);
  int done = 0;
  while (done < 12) {
    std::size_t d = 2 + done % 3;
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < d + 3; ++i) {
      RatVec v(d);
      for (Rat& x : v) x = Rat(c(rng), 1 + int(rng() % 2));
      pts.push_back(v);
    }
    if (affine_rank(pts) != d) continue;
    ++done;
    HPoly h = hull_to_h(VPoly{d, pts});
    Rat direct = volume_h_recursive(h.normals, h.offsets, d);
    CHECK(direct == volume_lattice_coords(VPoly{d, pts}));
  }
}

TEST_CASE("simplex fast path matches triangulation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-4, 4);
  int done = 0;
  while (done < 10) {
    std::size_t d = 2 + done % 3;
    std::vector<RatVec> verts;
    for (std::size_t i = 0; i <= d; ++i) {
      RatVec v(d);
      for (Rat& x : v) x = Rat(c(rng));
      verts.push_back(v);
    }
    Simplex s;
    try {
      s = make_simplex(verts);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++done;
    Rat fast = volume_lattice_coords(VPoly{d, s.verts});
    CHECK(fast == abs_rat(det(edge_matrix(s))) / Rat(factorial(d)));
    // force the triangulation path by adding the centroid
    VPoly with_centroid{d, s.verts};
    with_centroid.pts.push_back(vertex_centroid(s.verts));
    CHECK(volume_lattice_coords(with_centroid) == fast);
  }
}

TEST_CASE("project_simplex shadows") {
  Simplex t = standard_simplex(2);
  Subspace e1 = saturate({rv({1, 0})}, 2);
  Lattice lam = project_lattice(e1);
  VPoly q = project_simplex(t, e1, lam);
  CHECK(q.ambient == 1);
  CHECK(q.pts == std::vector<RatVec>{RatVec{Rat(0)}, RatVec{Rat(1)}});

  // projecting onto the full space returns the simplex itself
  Subspace full = full_subspace(2);
  VPoly qq = project_simplex(t, full, project_lattice(full));
  CHECK(qq.pts == dedupe_points(t.verts));
}
