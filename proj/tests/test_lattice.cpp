// Lattice layer: Hermite normal form, LLL, saturation, complements,
// intersections, projected lattices, and the covolume duality product.

#include "ehrhart/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ehrhart;

namespace {

IMat cols(std::vector<IntVec> c) { return IMat::from_columns(c); }

// membership of integer vector v in the integer column span of b
bool in_span(const IMat& b, const IntVec& v) {
  if (b.cols == 0) {
    for (const Int& x : v)
      if (x != 0) return false;
    return true;
  }
  auto x = solve(to_mat(b), to_rat_vec(v));
  if (!x) return false;
  for (const Rat& c : *x)
    if (!is_integer(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("hnf canonical examples") {
  CHECK(hnf(cols({{Int(2), Int(0)}, {Int(3), Int(0)}})) == cols({{Int(1), Int(0)}}));
  CHECK(hnf(IMat::identity(3)) == IMat::identity(3));
  CHECK(hnf(cols({{Int(2), Int(0)}, {Int(0), Int(2)}, {Int(1), Int(1)}})) ==
        cols({{Int(1), Int(1)}, {Int(0), Int(2)}}));
  // idempotence
  IMat g = cols({{Int(4), Int(6)}, {Int(2), Int(8)}, {Int(0), Int(10)}});
  CHECK(hnf(hnf(g)) == hnf(g));
}

TEST_CASE("hnf transform is unimodular and exact") {
  IMat a = cols({{Int(6), Int(4), Int(2)}, {Int(10), Int(2), Int(-4)}, {Int(2), Int(2), Int(2)}});
  auto [h, u] = hnf_with_transform(a);
  CHECK(abs_int(det_int(u)) == 1);
  CHECK(a * u == h);
}

TEST_CASE("hnf span preservation on random generators") {
  std::mt19937_64 rng(20260815);
  std::uniform_int_distribution<int> e(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 2 + trial % 3, n = 1 + trial % 4;
    std::vector<IntVec> gens(n, IntVec(d));
    for (auto& g : gens)
      for (Int& x : g) x = e(rng);
    IMat a = cols(gens);
    IMat h = hnf(a);
    for (int probe = 0; probe < 5; ++probe) {
      IntVec v(d, Int(0));
      for (const auto& g : gens) {
        int c = e(rng);
        for (std::size_t i = 0; i < d; ++i) v[i] += Int(c) * g[i];
      }
      CHECK(in_span(h, v));
    }
    // and conversely the hnf columns lie in the generator span over Z
    for (std::size_t c2 = 0; c2 < h.cols; ++c2) CHECK(in_span(hnf(a), h.column(c2)));
  }
}

TEST_CASE("integer kernel") {
  // kernel of (2 4) is generated by (2, -1)
  IMat a(1, 2);
  a.at(0, 0) = 2;
  a.at(0, 1) = 4;
  IMat k = integer_kernel(a);
  REQUIRE(k.cols == 1);
  IntVec v = k.column(0);
  CHECK(Int(2) * v[0] + Int(4) * v[1] == 0);
  CHECK(gcd_int(v[0], v[1]) == 1);
  CHECK(integer_kernel(IMat(0, 3)) == IMat::identity(3));
}

TEST_CASE("lll reduction: gram determinant preserved, conditions hold") {
  IMat b = cols({{Int(1), Int(1), Int(1)}, {Int(-1), Int(0), Int(2)}, {Int(3), Int(5), Int(6)}});
  REQUIRE(abs_int(det_int(b)) == 3);
  IMat r = lll_reduce(b);
  CHECK(abs_int(det_int(r)) == 3);
  CHECK(gram_det(to_mat(r)) == 9);

  // exact Gram-Schmidt check of size-reduction and Lovasz conditions
  std::size_t n = r.cols;
  std::vector<RatVec> bs(n);
  std::vector<RatVec> mu(n, RatVec(n, Rat(0)));
  RatVec norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    bs[i] = to_rat_vec(r.column(i));
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(to_rat_vec(r.column(i)), bs[j]) / norm[j];
      bs[i] = bs[i] - mu[i][j] * bs[j];
    }
    norm[i] = dot(bs[i], bs[i]);
    for (std::size_t j = 0; j < i; ++j) CHECK(abs_rat(mu[i][j]) <= Rat(1, 2));
    if (i > 0) CHECK(norm[i] >= (Rat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * norm[i - 1]);
  }
}

TEST_CASE("lll keeps the lattice") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(-6, 6);
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t d = 2 + trial % 3;
    IMat b(d, d);
    do {
      for (Int& x : b.a) x = e(rng);
    } while (det_int(b) == 0);
    IMat r = lll_reduce(b);
    CHECK(hnf(r) == hnf(b));
  }
}

TEST_CASE("saturate, complements, intersections") {
  Subspace l = saturate({RatVec{Rat(2), Rat(0)}}, 2);
  CHECK(l.dim() == 1);
  CHECK(l.sat_basis.column(0) == IntVec{Int(1), Int(0)});

  Subspace diag = saturate({RatVec{Rat(1, 2), Rat(1, 2)}}, 2);
  CHECK(diag.sat_basis.column(0) == IntVec{Int(1), Int(1)});

  Subspace z = zero_subspace(3);
  CHECK(z.dim() == 0);
  CHECK(orth_complement(z).dim() == 3);
  CHECK(full_subspace(3).dim() == 3);

  Subspace e1 = saturate({RatVec{Rat(1), Rat(0)}}, 2);
  Subspace c = orth_complement(e1);
  CHECK(c.dim() == 1);
  CHECK(c.sat_basis.column(0) == IntVec{Int(0), Int(1)});

  // two planes in R^3 meet in a line
  Subspace p1 = saturate({RatVec{Rat(1), Rat(0), Rat(0)}, RatVec{Rat(0), Rat(1), Rat(0)}}, 3);
  Subspace p2 = saturate({RatVec{Rat(0), Rat(1), Rat(0)}, RatVec{Rat(0), Rat(0), Rat(1)}}, 3);
  Subspace line = intersect(p1, p2);
  CHECK(line.dim() == 1);
  CHECK(line.sat_basis.column(0) == IntVec{Int(0), Int(1), Int(0)});
  CHECK(subspace_leq(line, p1));
  CHECK(subspace_leq(line, p2));
  CHECK(!subspace_leq(p1, p2));
  CHECK(subspace_contains(p1, RatVec{Rat(1, 3), Rat(-2), Rat(0)}));
  CHECK(!subspace_contains(p1, RatVec{Rat(0), Rat(0), Rat(1)}));
  CHECK(subspace_contains(zero_subspace(2), RatVec{Rat(0), Rat(0)}));
}

TEST_CASE("canonical keys deduplicate equal subspaces") {
  Subspace a = saturate({RatVec{Rat(1), Rat(1)}, RatVec{Rat(2), Rat(2)}}, 2);
  Subspace b = saturate({RatVec{Rat(-3), Rat(-3)}}, 2);
  CHECK(a == b);
  CHECK(a.canonical_key() == b.canonical_key());
}

TEST_CASE("projected lattice of the diagonal") {
  Subspace diag = saturate({RatVec{Rat(1), Rat(1)}}, 2);
  Lattice lam = project_lattice(diag);
  CHECK(lam.rank() == 1);
  // pr(Z^2) on the diagonal is generated by (1/2, 1/2)
  Mat b = lam.basis();
  CHECK(b.at(0, 0) == Rat(1, 2));
  CHECK(b.at(1, 0) == Rat(1, 2));
  CHECK(gram_det(b) == Rat(1, 2));
  // duality: covol(pr(Z^d) on L) * covol(Z^d cap L) = 1 via Gram determinants
  CHECK(gram_det(b) * gram_det(to_mat(diag.sat_basis)) == 1);
}

TEST_CASE("projected-lattice duality product on random subspaces") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> e(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 2 + trial % 4;
    std::size_t k = 1 + std::size_t(rng() % d);
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < k; ++i) {
      RatVec v(d);
      for (Rat& x : v) x = Rat(e(rng));
      gens.push_back(v);
    }
    Subspace l = saturate(gens, d);
    if (l.dim() == 0) continue;
    Lattice lam = project_lattice(l);
    CHECK(gram_det(lam.basis()) * gram_det(to_mat(l.sat_basis)) == 1);
    // every projected standard basis vector is a lattice member: exact coords
    Mat basis = lam.basis();
    Mat g = basis.transposed() * basis;
    for (std::size_t i = 0; i < d; ++i) {
      RatVec ei(d, Rat(0));
      ei[i] = 1;
      auto coords = solve(g, basis.transposed() * ei);
      REQUIRE(coords.has_value());
      for (const Rat& c : *coords) CHECK(is_integer(c));
    }
  }
}

TEST_CASE("projection coordinates") {
  Mat b = Mat::from_columns({RatVec{Rat(1), Rat(1)}});
  RatVec c = projection_coords(b, RatVec{Rat(2), Rat(0)});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Rat(1));
}
