// Independent enumeration oracles: raw lattice-point counts, quasi-polynomial
// fits per residue, and the literal slice-sum evaluation.

#include "ehrhart/oracle.hpp"

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

Simplex half_triangle() {
  return make_simplex({rv({0, 0}), rv({1, 0}), RatVec{Rat(0), Rat(1, 2)}});
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

Rat eval_poly_vec(const RatVec& coeffs, const Int& n) {
  Rat acc = 0;
  Rat x = Rat(n);
  for (std::size_t p = coeffs.size(); p-- > 0;) acc = acc * x + coeffs[p];
  return acc;
}

}  // namespace

TEST_CASE("count_points pinned values") {
  Simplex t = standard_simplex(2);
  CHECK(count_points(t, 1) == 3);
  CHECK(count_points(t, 2) == 6);
  CHECK(count_points(t, 3) == 10);
  CHECK(count_points(t, 4) == 15);

  Simplex h = half_triangle();
  CHECK(count_points(h, 1) == 2);
  CHECK(count_points(h, 2) == 4);

  Simplex cube_like = standard_simplex(3);
  CHECK(count_points(cube_like, 1) == 4);
  CHECK(count_points(cube_like, 2) == 10);

  // shifted away from the origin, negative coordinates
  Simplex shifted = make_simplex({rv({-2, -1}), rv({0, -1}), rv({-2, 1})});
  CHECK(count_points(shifted, 1) == 6);

  CHECK_THROWS_AS(count_points(t, 0), std::invalid_argument);
}

TEST_CASE("fit on the standard triangle") {
  FitResult fit = fit_quasipolynomial(standard_simplex(2));
  CHECK(fit.d == 2);
  CHECK(fit.period == 1);
  REQUIRE(fit.coeffs.size() == 1);
  REQUIRE(fit.coeffs[0].size() == 3);
  CHECK(fit.coeffs[0][0] == 1);
  CHECK(fit.coeffs[0][1] == Rat(3, 2));
  CHECK(fit.coeffs[0][2] == Rat(1, 2));
}

TEST_CASE("fit on the half segment") {
  Simplex seg = make_simplex({RatVec{Rat(0)}, RatVec{Rat(1, 2)}});
  FitResult fit = fit_quasipolynomial(seg);
  CHECK(fit.period == 2);
  REQUIRE(fit.coeffs.size() == 2);
  // odd residue (index 0): floor(n/2) + 1 = n/2 + 1/2
  CHECK(fit.coeffs[0][1] == Rat(1, 2));
  CHECK(fit.coeffs[0][0] == Rat(1, 2));
  // even residue (index 1): n/2 + 1
  CHECK(fit.coeffs[1][1] == Rat(1, 2));
  CHECK(fit.coeffs[1][0] == 1);
}

TEST_CASE("fit on the half triangle") {
  FitResult fit = fit_quasipolynomial(half_triangle());
  CHECK(fit.period == 2);
  REQUIRE(fit.coeffs.size() == 2);
  CHECK(fit.coeffs[0][2] == Rat(1, 4));
  CHECK(fit.coeffs[0][1] == 1);
  CHECK(fit.coeffs[0][0] == Rat(3, 4));
  CHECK(fit.coeffs[1][2] == Rat(1, 4));
  CHECK(fit.coeffs[1][1] == 1);
  CHECK(fit.coeffs[1][0] == 1);
}

TEST_CASE("fit reproduces fresh counts beyond the interpolation window") {
  std::mt19937_64 rng = seeded_rng();
  for (int trial = 0; trial < 5; ++trial) {
    std::size_t d = 1 + trial % 3;
    Simplex s = random_simplex(rng, d, 2, 2);
    FitResult fit = fit_quasipolynomial(s);
    Int t = fit.period;
    for (std::size_t r = 0; r < fit.coeffs.size(); ++r) {
      for (int extra = 1; extra <= 3; ++extra) {
        // the fit used steps 0..d; probe dilations past that window
        Int n = Int(r + 1) + (Int(d) + extra) * t;
        CHECK(eval_poly_vec(fit.coeffs[r], n) == Rat(count_points(s, n)));
      }
    }
  }
}

TEST_CASE("el_bruteforce pinned values") {
  Simplex big = make_simplex({rv({0, 0}), rv({2, 0}), rv({0, 2})});
  RatVec e1{Rat(1), Rat(0)};
  CHECK(el_bruteforce(big, saturate({e1}, 2)) == 3);
  CHECK(el_bruteforce(standard_simplex(2), saturate({e1}, 2)) == 1);
  // dim L = 0: plain volume
  CHECK(el_bruteforce(big, saturate({}, 2)) == 2);
  // dim L = d: lattice point count
  RatVec e2{Rat(0), Rat(1)};
  CHECK(el_bruteforce(big, saturate({e1, e2}, 2)) == Rat(count_points(big, 1)));
}
