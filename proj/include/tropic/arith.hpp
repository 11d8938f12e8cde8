#pragma once

// Exact arithmetic substrate. Everything in this project is computed over
// arbitrary-precision integers and rationals; no floating point anywhere.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace tropic {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// gcd of the absolute values of the entries; 0 for the zero vector.
inline Int content(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(const RatVec& v) {
  for (const Rat& x : v)
    if (x != 0) return false;
  return true;
}

struct ZeroVector : std::runtime_error {
  ZeroVector() : std::runtime_error("primitive_part: zero vector") {}
};

// v = c * u with u primitive (content 1) and c > 0.
inline std::pair<IntVec, Int> primitive_part(const IntVec& v) {
  if (is_zero(v)) throw ZeroVector();
  Int c = content(v);
  IntVec u(v.size());
  for (size_t i = 0; i < v.size(); ++i) u[i] = v[i] / c;
  return {u, c};
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec neg(const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

// "p/q" (or plain "p") with q > 0 after canonicalization.
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::runtime_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline std::string format_rat(const Rat& r) { return r.get_str(); }

inline std::string format_vec(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

inline std::string format_vec(const RatVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace tropic
