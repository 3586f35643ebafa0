#pragma once

// Top-level driver: assemble the subspace poset from the simplex's faces,
// take Moebius numbers, combine slice valuations into the counting function
// nu(m), and interpolate on an arithmetic progression of dilations to read
// off the top quasi-polynomial coefficients.

#include "ehrhart/lattice.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/slice_valuation.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ehrhart {

// least t >= 1 with t * simplex integral
inline Int minimal_period(const Simplex& s) {
  Int t = 1;
  for (const RatVec& v : s.verts)
    for (const Rat& x : v) t = lcm_int(t, den(x));
  return t;
}

// orthogonal complements of the linear spans of the (d-k)-faces, closed under
// intersection; sorted canonically (dimension, then basis key)
inline std::vector<Subspace> build_poset(const Simplex& s, std::size_t k) {
  std::size_t d = s.dim;
  if (k > d) throw std::invalid_argument("build_poset: k exceeds dimension");
  std::set<std::string> keys;
  std::vector<Subspace> out;
  for (const auto& f : faces(d, d - k)) {
    Subspace l = orth_complement(lin_face(s, f));
    if (keys.insert(l.canonical_key()).second) out.push_back(std::move(l));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Subspace m = intersect(out[i], out[j]);
        if (keys.insert(m.canonical_key()).second) {
          out.push_back(std::move(m));
          changed = true;
        }
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Poset {
  std::vector<Subspace> elems;            // sorted by (dim, key)
  std::vector<std::vector<bool>> leq;     // leq[i][j]: elems[i] subset of elems[j]
  std::vector<std::vector<Int>> mu_pair;  // Moebius function on comparable pairs
  std::vector<Int> mu;                    // mu[i] = sum over j >= i of mu_pair[i][j]
};

inline Poset make_poset(const Simplex& s, std::size_t k) {
  Poset p;
  p.elems = build_poset(s, k);
  std::size_t n = p.elems.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.leq[i][j] = subspace_leq(p.elems[i], p.elems[j]);
  p.mu_pair.assign(n, std::vector<Int>(n, Int(0)));
  // elements are dim-sorted, so strict containments point left to right
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      if (!p.leq[i][j]) continue;
      if (i == j) {
        p.mu_pair[i][j] = 1;
        continue;
      }
      Int acc = 0;
      for (std::size_t l = i; l < j; ++l)
        if (p.leq[i][l] && p.leq[l][j]) acc += p.mu_pair[i][l];
      p.mu_pair[i][j] = -acc;
    }
  p.mu.assign(n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (p.leq[i][j]) p.mu[i] += p.mu_pair[i][j];
  return p;
}

// inclusion-exclusion sanity: sum of mu(L)[v in L] = [v in union of the L]
inline bool probe_identity(const Poset& p, const RatVec& v) {
  Int lhs = 0;
  bool in_union = false;
  for (std::size_t i = 0; i < p.elems.size(); ++i) {
    if (!subspace_contains(p.elems[i], v)) continue;
    lhs += p.mu[i];
    in_union = true;
  }
  return lhs == (in_union ? Int(1) : Int(0));
}

// shared evaluation state: slice structures and E_L values are cached per
// subspace so repeated dilations and repeated n reuse all chamber work
struct EhrhartContext {
  Simplex simplex;
  Rat vol;
  std::map<std::string, SliceStructure> structures;
  std::map<std::pair<std::string, Int>, Rat> el_cache;

  explicit EhrhartContext(Simplex s) : simplex(std::move(s)) {
    vol = abs_rat(det(edge_matrix(simplex))) / Rat(factorial(simplex.dim));
  }

  Rat el(const Subspace& l, const Int& m) {
    if (l.dim() == 0) return vol * pow_rat(Rat(m), simplex.dim);
    auto key = std::make_pair(l.canonical_key(), m);
    auto hit = el_cache.find(key);
    if (hit != el_cache.end()) return hit->second;
    auto sit = structures.find(l.canonical_key());
    if (sit == structures.end())
      sit = structures.emplace(l.canonical_key(), build_slice_structure(simplex, l)).first;
    Rat val = eval_EL_dilated(sit->second, m);
    el_cache.emplace(std::move(key), val);
    return val;
  }
};

struct CoeffReport {
  std::size_t d = 0;
  std::size_t k = 0;
  Int n = 1;
  Int period = 1;
  RatVec coefficients;  // entry i is the coefficient of n^(d-i), i = 0..k
  RatVec nu;            // full interpolated vector, entry p is the m^p coefficient
};

inline CoeffReport top_coefficients(EhrhartContext& ctx, std::size_t k, const Int& n) {
  const Simplex& s = ctx.simplex;
  std::size_t d = s.dim;
  if (k > d) throw std::invalid_argument("top_coefficients: k exceeds dimension");
  if (n < 1) throw std::invalid_argument("top_coefficients: n must be >= 1");
  Int t = minimal_period(s);
  Poset poset = make_poset(s, k);
  RatVec xs, ys;
  for (std::size_t step = 0; step <= d; ++step) {
    Int m = n + Int(step) * t;
    Rat acc = 0;
    for (std::size_t i = 0; i < poset.elems.size(); ++i)
      if (poset.mu[i] != 0) acc += Rat(poset.mu[i]) * ctx.el(poset.elems[i], m);
    xs.push_back(Rat(m));
    ys.push_back(acc);
  }
  RatVec g = interpolate_univariate(xs, ys);
  CoeffReport rep;
  rep.d = d;
  rep.k = k;
  rep.n = n;
  rep.period = t;
  for (std::size_t i = 0; i <= k; ++i) rep.coefficients.push_back(g[d - i]);
  rep.nu = g;
  return rep;
}

inline CoeffReport top_coefficients(const Simplex& s, std::size_t k, const Int& n) {
  EhrhartContext ctx(s);
  return top_coefficients(ctx, k, n);
}

}  // namespace ehrhart
