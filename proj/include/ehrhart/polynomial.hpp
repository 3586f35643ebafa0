#pragma once

// Sparse multivariate polynomials over Rat, univariate truncated power series,
// Bernoulli numbers, and exact interpolation helpers.

#include "ehrhart/matrix.hpp"
#include "ehrhart/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace ehrhart {

using Expo = std::vector<unsigned>;

struct Poly {
  std::size_t nvars = 0;
  std::map<Expo, Rat> terms;  // exponent vector -> coefficient, zero coeffs dropped

  static Poly zero(std::size_t nvars) { return Poly{nvars, {}}; }
  static Poly constant(std::size_t nvars, const Rat& c) {
    Poly p{nvars, {}};
    if (c != 0) p.terms[Expo(nvars, 0)] = c;
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Poly p{nvars, {}};
    Expo e(nvars, 0);
    e[i] = 1;
    p.terms[e] = 1;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) {
      unsigned s = 0;
      for (unsigned x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) terms.emplace(e, c);
    else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r = Poly::zero(nvars);
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        Expo e(nvars);
        for (std::size_t i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    return r;
  }
  Poly operator*(const Rat& s) const {
    Poly r = Poly::zero(nvars);
    if (s == 0) return r;
    for (const auto& [e, c] : terms) r.terms[e] = c * s;
    return r;
  }

  Rat eval(const RatVec& x) const {
    Rat total = 0;
    for (const auto& [e, c] : terms) {
      Rat m = c;
      for (std::size_t i = 0; i < nvars; ++i)
        for (unsigned p = 0; p < e[i]; ++p) m *= x[i];
      total += m;
    }
    return total;
  }

  // substitute variable i -> images[i]; images share a common variable count
  Poly substitute(const std::vector<Poly>& images) const {
    std::size_t out_vars = images.empty() ? 0 : images[0].nvars;
    Poly r = Poly::zero(out_vars);
    for (const auto& [e, c] : terms) {
      Poly m = Poly::constant(out_vars, c);
      for (std::size_t i = 0; i < nvars; ++i)
        for (unsigned p = 0; p < e[i]; ++p) m = m * images[i];
      r = r + m;
    }
    return r;
  }
};

// f(x) -> s^power * f(x / s): the dilation transport of a fiber-volume
// polynomial of homogeneity degree `power`.
inline Poly dilate_poly(const Poly& f, const Rat& s, unsigned power) {
  Poly r = Poly::zero(f.nvars);
  for (const auto& [e, c] : f.terms) {
    unsigned deg = 0;
    for (unsigned x : e) deg += x;
    Rat factor = deg <= power ? pow_rat(s, power - deg) : Rat(1) / pow_rat(s, deg - power);
    r.terms[e] = c * factor;
  }
  return r;
}

// all exponent vectors in `nvars` variables with total degree <= deg, ordered
inline std::vector<Expo> monomials_up_to(std::size_t nvars, unsigned deg) {
  std::vector<Expo> out;
  Expo cur(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

// exact fit of a polynomial of total degree <= deg through the given nodes;
// the node count must equal the monomial count and the system must be regular
inline Poly interpolate_polynomial(const std::vector<RatVec>& nodes, const RatVec& values,
                                   std::size_t nvars, unsigned deg) {
  std::vector<Expo> mons = monomials_up_to(nvars, deg);
  if (nodes.size() != mons.size() || values.size() != mons.size())
    throw std::invalid_argument("interpolate_polynomial: node/monomial count mismatch");
  Mat m(nodes.size(), mons.size());
  for (std::size_t r = 0; r < nodes.size(); ++r)
    for (std::size_t c = 0; c < mons.size(); ++c) {
      Rat v = 1;
      for (std::size_t i = 0; i < nvars; ++i)
        for (unsigned p = 0; p < mons[c][i]; ++p) v *= nodes[r][i];
      m.at(r, c) = v;
    }
  auto x = solve(m, values);
  if (!x) throw std::logic_error("interpolate_polynomial: singular system");
  Poly p = Poly::zero(nvars);
  for (std::size_t c = 0; c < mons.size(); ++c) p.add_term(mons[c], (*x)[c]);
  return p;
}

// univariate: exact coefficients (low to high) of the degree-(n-1) polynomial
// through n distinct (x, y) pairs
inline RatVec interpolate_univariate(const RatVec& xs, const RatVec& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("interpolate_univariate: bad input");
  std::size_t n = xs.size();
  Mat m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Rat v = 1;
    for (std::size_t c = 0; c < n; ++c) {
      m.at(r, c) = v;
      v *= xs[r];
    }
  }
  auto coef = solve(m, ys);
  if (!coef) throw std::logic_error("interpolate_univariate: singular Vandermonde");
  return *coef;
}

// --- truncated univariate series -------------------------------------------

struct Series {
  RatVec c;  // c[i] = coefficient of tau^i, fixed length order+1

  static Series zero(std::size_t order) { return Series{RatVec(order + 1, Rat(0))}; }
  std::size_t order() const { return c.size() - 1; }

  Series mul(const Series& o) const {
    Series r = zero(order());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; i + j < c.size(); ++j) {
        if (o.c[j] == 0) continue;
        r.c[i + j] += c[i] * o.c[j];
      }
    }
    return r;
  }
  Series pow(unsigned e) const {
    Series r = zero(order());
    r.c[0] = 1;
    Series base = *this;
    while (e) {
      if (e & 1) r = r.mul(base);
      base = base.mul(base);
      e >>= 1;
    }
    return r;
  }
};

inline const Rat& bernoulli(std::size_t s) {
  thread_local std::vector<Rat> cache{Rat(1)};
  while (cache.size() <= s) {
    std::size_t m = cache.size();
    // sum_{j=0..m} C(m+1, j) B_j = 0
    Rat acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += Rat(binomial(m + 1, j)) * cache[j];
    cache.push_back(-acc / Rat(Int(m + 1)));
  }
  return cache[s];
}

}  // namespace ehrhart
