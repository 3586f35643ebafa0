#pragma once

// Exact arbitrary-precision integer and rational scalars plus small vector
// helpers.  Everything downstream works over these; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehrhart {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int floor_rat(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) > 0 && q * den(r) != num(r)) ++q;
  return q;
}

// Nearest integer, ties rounded toward +infinity (used by LLL size reduction,
// where any tie-break works as long as |r - round(r)| <= 1/2).
inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

// gcd of a vector, 0 for the all-zero vector.
inline Int gcd_vec(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd_int(g, x);
  return g;
}

// Divides by the gcd so the vector becomes primitive; returns the gcd
// (0 for the zero vector, which is left unchanged).
inline Int make_primitive(IntVec& v) {
  Int g = gcd_vec(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return g;
}

inline Int lcm_of_denominators(const RatVec& v) {
  Int l = 1;
  for (const Rat& r : v) l = lcm_int(l, den(r));
  return l;
}

// Clears denominators: returns (integer vector, common denominator D) with
// v = result / D.
inline std::pair<IntVec, Int> scale_to_integer(const RatVec& v) {
  Int d = lcm_of_denominators(v);
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (d / den(v[i]));
  return {w, d};
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec+: size mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec-: size mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline RatVec operator*(const Rat& s, const RatVec& a) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

inline bool is_zero(const RatVec& v) {
  for (const Rat& x : v) if (x != 0) return false;
  return true;
}

inline RatVec to_rat_vec(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// Parses "p", "-p" or "p/q" with q > 0 after normalization.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  auto slash = s.find('/');
  // validate and normalize: digits with an optional sign, leading '+' dropped
  auto check_int = [](std::string t) {
    if (t.empty()) throw std::invalid_argument("rat_from_string: bad integer");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw std::invalid_argument("rat_from_string: bad integer");
    for (std::size_t p = i; p < t.size(); ++p)
      if (t[p] < '0' || t[p] > '9') throw std::invalid_argument("rat_from_string: bad digit");
    if (t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (slash == std::string::npos) return Rat(Int(check_int(s)));
  std::string p = check_int(s.substr(0, slash));
  Int qi(check_int(s.substr(slash + 1)));
  if (qi == 0) throw std::invalid_argument("rat_from_string: zero denominator");
  return Rat(Int(p), qi);
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) s += "/" + den(r).str();
  return s;
}

// Power with non-negative integer exponent.
inline Rat pow_rat(const Rat& base, std::size_t e) {
  Rat r = 1, b = base;
  for (; e; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}

inline Int pow_int(const Int& base, std::size_t e) {
  Int r = 1, b = base;
  for (; e; e >>= 1, b *= b)
    if (e & 1) r *= b;
  return r;
}

inline Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= Int(i);
  return f;
}

inline Int binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Int b = 1;
  for (std::size_t i = 0; i < k; ++i) { b *= Int(n - i); b /= Int(i + 1); }
  return b;
}

}  // namespace ehrhart
