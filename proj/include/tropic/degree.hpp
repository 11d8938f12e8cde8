#pragma once

// Degrees of tropical curves: finite multisets of nonzero weighted integer
// directions, valid when they sum to zero.

#include <map>
#include <string>
#include <vector>

#include "tropic/arith.hpp"

namespace tropic {

struct Degree {
  int n = 0;
  std::map<IntVec, int> rays;  // weighted vector v = w*u  ->  count

  int e() const {
    int t = 0;
    for (auto& [v, c] : rays) t += c;
    return t;
  }

  IntVec total_vector() const {
    IntVec s(n, Int(0));
    for (auto& [v, c] : rays)
      for (int j = 0; j < n; ++j) s[j] += c * v[j];
    return s;
  }

  // multiset as a flat list
  std::vector<IntVec> expand() const {
    std::vector<IntVec> out;
    for (auto& [v, c] : rays)
      for (int i = 0; i < c; ++i) out.push_back(v);
    return out;
  }
};

struct DegreeValidation {
  bool ok = false;
  std::string reason;  // empty iff ok
  IntVec sum;          // offending total when not balanced
};

inline DegreeValidation validate_degree(const Degree& d) {
  DegreeValidation r;
  if (d.n <= 0) {
    r.reason = "ambient rank must be positive";
    return r;
  }
  if (d.rays.empty()) {
    r.reason = "empty support";
    return r;
  }
  for (auto& [v, c] : d.rays) {
    if (int(v.size()) != d.n) {
      r.reason = "ray of wrong dimension " + format_vec(v);
      return r;
    }
    if (is_zero(v)) {
      r.reason = "zero ray";
      return r;
    }
    if (c <= 0) {
      r.reason = "nonpositive count at " + format_vec(v);
      return r;
    }
  }
  IntVec s = d.total_vector();
  if (!is_zero(s)) {
    r.reason = "unbalanced degree, sum " + format_vec(s);
    r.sum = s;
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace tropic
