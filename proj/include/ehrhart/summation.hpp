#pragma once

// Summation of a polynomial over the lattice points of an open or closed
// rational polytope: apply the Euler-operator polynomial f(x d/dx) to the
// short rational generating function, then evaluate the result at x = 1 via
// a one-parameter substitution x -> exp(l tau) and exact Laurent/Todd series.

#include "ehrhart/genfun.hpp"
#include "ehrhart/polynomial.hpp"
#include "ehrhart/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ehrhart {

// one application of x_i d/dx_i to a term c x^a / prod (1 - x^{b_j})^{g_j}
inline void apply_euler_var(const SrfTerm& t, std::size_t i, Srf& out) {
  if (t.a[i] != 0) {
    SrfTerm s = t;
    s.coef *= Rat(t.a[i]);
    out.push_back(std::move(s));
  }
  for (std::size_t j = 0; j < t.dens.size(); ++j) {
    const auto& [b, g] = t.dens[j];
    if (b[i] == 0) continue;
    SrfTerm s = t;
    s.coef *= Rat(Int(g) * b[i]);
    for (std::size_t r = 0; r < b.size(); ++r) s.a[r] += b[r];
    s.dens[j].second += 1;
    out.push_back(std::move(s));
  }
}

// f(x_1 d/dx_1, ..., x_n d/dx_n) applied to S; the result generates
// sum f(m) x^m over the same lattice set
inline Srf apply_diff_operator(const Poly& f, const Srf& s) {
  if (s.empty()) return {};
  std::size_t ambient = s[0].a.size();
  if (f.nvars != ambient) throw std::invalid_argument("apply_diff_operator: variable mismatch");
  unsigned max_gamma_in = 0;
  for (const SrfTerm& t : s) {
    unsigned g = 0;
    for (const auto& [b, gg] : t.dens) g += gg;
    max_gamma_in = std::max(max_gamma_in, g);
  }
  Srf total;
  for (const auto& [e, c] : f.terms) {
    Srf cur = s;
    for (std::size_t i = 0; i < ambient; ++i)
      for (unsigned p = 0; p < e[i]; ++p) {
        Srf next;
        for (const SrfTerm& t : cur) apply_euler_var(t, i, next);
        cur = merge_srf(std::move(next));
      }
    for (SrfTerm& t : cur) {
      t.coef *= c;
      total.push_back(std::move(t));
    }
  }
  Srf merged = merge_srf(std::move(total));
  unsigned bound = max_gamma_in + f.total_degree();
  for (const SrfTerm& t : merged) {
    unsigned g = 0;
    for (const auto& [b, gg] : t.dens) g += gg;
    if (g > bound) throw std::logic_error("apply_diff_operator: denominator degree bound violated");
  }
  return merged;
}

// least moment-curve direction l = (1, M, M^2, ...) with <l, b> != 0 for all
// denominator vectors; min_m forces a later candidate (used to confirm the
// result does not depend on the choice)
inline IntVec specialization_direction(const Srf& s, unsigned min_m = 0) {
  if (s.empty()) return {};
  std::size_t n = s[0].a.size();
  Int max_entry = 0;
  for (const SrfTerm& t : s)
    for (const auto& [b, g] : t.dens)
      for (const Int& x : b) max_entry = std::max(max_entry, abs_int(x));
  Int m = std::max(Int(min_m), Int(max_entry + 1));
  if (m < 2) m = 2;
  for (;; ++m) {
    IntVec l(n);
    Int p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = p;
      p *= m;
    }
    bool ok = true;
    for (const SrfTerm& t : s)
      for (const auto& [b, g] : t.dens)
        if (dot(l, b) == 0) { ok = false; break; }
    if (ok) return l;
  }
}

// exact limit of S(x) as x -> 1 along x = exp(l tau): per term the coefficient
// of tau^D in  exp(alpha tau) * prod_j (tau / (1 - exp(beta_j tau)))^{gamma_j}
// with D = sum gamma (each factor expands in Bernoulli numbers)
inline Rat specialize_at_one(const Srf& s, unsigned min_m = 0) {
  if (s.empty()) return 0;
  IntVec l = specialization_direction(s, min_m);
  Rat value = 0;
  for (const SrfTerm& t : s) {
    unsigned d = 0;
    for (const auto& [b, g] : t.dens) d += g;
    Int alpha = dot(l, t.a);
    Series q = Series::zero(d);
    Rat f = 1;
    Int ap = 1;
    for (unsigned i = 0; i <= d; ++i) {
      q.c[i] = Rat(ap) * f;
      ap *= alpha;
      f /= Rat(Int(i + 1));
    }
    Series prod = q;
    for (const auto& [b, g] : t.dens) {
      Int beta = dot(l, b);
      Series p = Series::zero(d);
      Rat fact = 1;
      Int bp = 1;
      for (unsigned i = 0; i <= d; ++i) {
        p.c[i] = -bernoulli(i) * Rat(bp) * fact / Rat(beta);
        bp *= beta;
        fact /= Rat(Int(i + 1));
      }
      prod = prod.mul(p.pow(g));
    }
    value += t.coef * prod.c[d];
  }
  return value;
}

// sum of f over the lattice points of conv(pts) (open = relative interior)
inline Rat sum_polynomial(const Poly& f, const std::vector<RatVec>& pts, std::size_t ambient,
                          bool open, unsigned min_m = 0) {
  Srf s = genfun(pts, ambient, open);
  if (s.empty()) return 0;
  return specialize_at_one(apply_diff_operator(f, s), min_m);
}

}  // namespace ehrhart
