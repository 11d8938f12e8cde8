#include "tropic/polyhedral.hpp"

#include <array>
#include <bit>
#include <climits>
#include <numeric>

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tropic {

namespace {

// trivial rows: {} feasible, nullopt infeasible, otherwise keep
enum class RowFate { Keep, Drop, Infeasible };

RowFate constant_row_fate(const LinIneq& q) {
  if (!is_zero(q.m)) return RowFate::Keep;
  if (q.c > 0 || (q.strict && q.c == 0)) return RowFate::Infeasible;
  return RowFate::Drop;
}

}  // namespace

// dedupe and keep only the tightest bound per covector
bool fm_compress(std::vector<LinIneq>& sys) {
  std::vector<LinIneq> rows;
  rows.reserve(sys.size());
  for (auto& q : sys) {
    RowFate f = constant_row_fate(q);
    if (f == RowFate::Infeasible) return false;
    if (f == RowFate::Keep) rows.push_back(std::move(q));
  }
  std::sort(rows.begin(), rows.end(),
            [](const LinIneq& a, const LinIneq& b) { return a.m < b.m; });
  sys.clear();
  for (auto& q : rows) {
    if (!sys.empty() && sys.back().m == q.m) {
      if (q.c > sys.back().c || (q.c == sys.back().c && q.strict))
        sys.back() = std::move(q);
    } else {
      sys.push_back(std::move(q));
    }
  }
  return true;
}

// eliminate variable v by combining opposite-sign rows
bool fm_eliminate(std::vector<LinIneq>& sys, int v) {
  std::vector<LinIneq> pos, neg, rest;
  for (auto& q : sys) {
    if (q.m[v] > 0)
      pos.push_back(std::move(q));
    else if (q.m[v] < 0)
      neg.push_back(std::move(q));
    else
      rest.push_back(std::move(q));
  }
  for (auto& p : pos)
    for (auto& q : neg) {
      Int a = -q.m[v], b = p.m[v];
      IntVec m(p.m.size());
      for (size_t j = 0; j < m.size(); ++j) m[j] = a * p.m[j] + b * q.m[j];
      rest.push_back(normalize_ineq(std::move(m), a * p.c + b * q.c,
                                    p.strict || q.strict));
    }
  sys = std::move(rest);
  return fm_compress(sys);
}

namespace {

// elimination order heuristic: fewest pos*neg products first
int pick_var(const std::vector<LinIneq>& sys, const std::vector<bool>& done) {
  int best = -1;
  long best_cost = -1;
  int n = int(done.size());
  for (int v = 0; v < n; ++v) {
    if (done[v]) continue;
    long p = 0, q = 0;
    for (auto& r : sys) {
      if (r.m[v] > 0) ++p;
      if (r.m[v] < 0) ++q;
    }
    long cost = p * q - (p + q);
    if (best < 0 || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

Rat eval(const IntVec& m, const RatVec& x) {
  Rat s = 0;
  for (size_t j = 0; j < m.size(); ++j) s += Rat(m[j]) * x[j];
  return s;
}

std::vector<LinIneq> equality_rows(const IntVec& m, const Int& c) {
  IntVec mn(m.size());
  for (size_t j = 0; j < m.size(); ++j) mn[j] = -m[j];
  return {LinIneq{m, c, false}, LinIneq{mn, -c, false}};
}

int pick_var64(int n, const std::vector<FastRow>& sys,
               const std::vector<bool>& done) {
  int best = -1;
  long best_cost = -1;
  for (int v = 0; v < n; ++v) {
    if (done[v]) continue;
    long p = 0, q = 0;
    for (auto& r : sys) {
      if (r.m[v] > 0) ++p;
      if (r.m[v] < 0) ++q;
    }
    long cost = p * q - (p + q);
    if (best < 0 || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

bool row64_less(int n, const FastRow& a, const FastRow& b) {
  for (int j = 0; j < n; ++j)
    if (a.m[j] != b.m[j]) return a.m[j] < b.m[j];
  return false;
}

bool row64_eq(int n, const FastRow& a, const FastRow& b) {
  for (int j = 0; j < n; ++j)
    if (a.m[j] != b.m[j]) return false;
  return true;
}

}  // namespace

bool fast_from(int n, const LinIneq& q, FastRow& r) {
  r.m.fill(0);
  for (int j = 0; j < n; ++j) {
    if (!q.m[j].fits_slong_p()) return false;
    r.m[j] = q.m[j].get_si();
    if (r.m[j] == LLONG_MIN) return false;
  }
  if (!q.c.fits_slong_p()) return false;
  r.c = q.c.get_si();
  if (r.c == LLONG_MIN) return false;
  r.strict = q.strict;
  return true;
}

void fast_normalize(int n, FastRow& r) {
  long long g = r.c < 0 ? -r.c : r.c;
  for (int j = 0; j < n; ++j) g = std::gcd(g, r.m[j] < 0 ? -r.m[j] : r.m[j]);
  if (g > 1) {
    for (int j = 0; j < n; ++j) r.m[j] /= g;
    r.c /= g;
  }
}

FastStatus fast_compress(int n, std::vector<FastRow>& sys) {
  size_t w = 0;
  for (size_t i = 0; i < sys.size(); ++i) {
    const FastRow& q = sys[i];
    bool zero = true;
    for (int j = 0; j < n; ++j)
      if (q.m[j]) {
        zero = false;
        break;
      }
    if (zero) {
      if (q.c > 0 || (q.strict && q.c == 0)) return FastStatus::Infeasible;
      continue;
    }
    sys[w++] = q;
  }
  sys.resize(w);
  std::sort(sys.begin(), sys.end(), [n](const FastRow& a, const FastRow& b) {
    return row64_less(n, a, b);
  });
  w = 0;
  for (size_t i = 0; i < sys.size(); ++i) {
    if (w && row64_eq(n, sys[w - 1], sys[i])) {
      if (sys[i].c > sys[w - 1].c ||
          (sys[i].c == sys[w - 1].c && sys[i].strict))
        sys[w - 1] = sys[i];
    } else {
      sys[w++] = sys[i];
    }
  }
  sys.resize(w);
  return FastStatus::Ok;
}

FastStatus fast_eliminate(int n, std::vector<FastRow>& sys, int v, int step) {
  size_t w = 0;
  std::vector<FastRow> pos, neg;
  for (auto& q : sys) {
    if (q.m[v] > 0)
      pos.push_back(q);
    else if (q.m[v] < 0)
      neg.push_back(q);
    else
      sys[w++] = q;
  }
  sys.resize(w);
  for (auto& p : pos)
    for (auto& q : neg) {
      long long a = -q.m[v], b = p.m[v];
      FastRow r;
      r.m.fill(0);
      for (int j = 0; j < n; ++j) {
        long long x, y;
        if (__builtin_mul_overflow(a, p.m[j], &x) ||
            __builtin_mul_overflow(b, q.m[j], &y) ||
            __builtin_add_overflow(x, y, &r.m[j]) || r.m[j] == LLONG_MIN)
          return FastStatus::Overflow;
      }
      long long x, y;
      if (__builtin_mul_overflow(a, p.c, &x) ||
          __builtin_mul_overflow(b, q.c, &y) ||
          __builtin_add_overflow(x, y, &r.c) || r.c == LLONG_MIN)
        return FastStatus::Overflow;
      r.strict = p.strict || q.strict;
      r.anc = {p.anc[0] | q.anc[0], p.anc[1] | q.anc[1]};
      if (step >= 1 &&
          std::popcount(r.anc[0]) + std::popcount(r.anc[1]) > step + 1)
        continue;
      fast_normalize(n, r);
      sys.push_back(r);
    }
  return fast_compress(n, sys);
}

FastStatus fast_feasible(int n, std::vector<FastRow> sys) {
  if (fast_compress(n, sys) == FastStatus::Infeasible)
    return FastStatus::Infeasible;
  bool track = sys.size() >= 16 && sys.size() <= 128;
  for (size_t i = 0; i < sys.size(); ++i) {
    sys[i].anc = {0, 0};
    if (track) sys[i].anc[i >> 6] = std::uint64_t(1) << (i & 63);
  }
  std::vector<bool> done(n, false);
  for (int k = 0; k < n; ++k) {
    int v = pick_var64(n, sys, done);
    done[v] = true;
    FastStatus f = fast_eliminate(n, sys, v, track ? k + 1 : 0);
    if (f != FastStatus::Ok) return f;
  }
  return FastStatus::Ok;
}

void fast_irredundant(int n, std::vector<FastRow>& sys) {
  for (size_t i = 0; i < sys.size();) {
    std::vector<FastRow> rest;
    rest.reserve(sys.size());
    for (size_t j = 0; j < sys.size(); ++j)
      if (j != i) rest.push_back(sys[j]);
    FastRow negq = sys[i];
    bool flip = false;
    for (int j = 0; j < n; ++j) {
      long long x;
      if (__builtin_sub_overflow(0LL, negq.m[j], &x)) {
        flip = true;
        break;
      }
      negq.m[j] = x;
    }
    long long nc;
    if (flip || __builtin_sub_overflow(0LL, negq.c, &nc)) {
      ++i;
      continue;
    }
    negq.c = nc;
    negq.strict = !negq.strict;
    rest.push_back(negq);
    if (fast_feasible(n, std::move(rest)) == FastStatus::Infeasible)
      sys.erase(sys.begin() + i);
    else
      ++i;
  }
}

LinIneq normalize_ineq(IntVec m, Int c, bool strict) {
  Int g = content(m);
  g = gcd(g, abs(c));
  if (g > 1) {
    for (auto& x : m) x /= g;
    c /= g;
  }
  return {std::move(m), std::move(c), strict};
}

LinIneq normalize_ineq(const RatVec& m, const Rat& c, bool strict) {
  Int den = Int(c.get_den());
  for (auto& q : m) den = lcm(den, Int(q.get_den()));
  IntVec mi(m.size());
  for (size_t j = 0; j < m.size(); ++j) {
    Rat s = m[j] * Rat(den);
    mi[j] = s.get_num();
  }
  Rat cs = c * Rat(den);
  return normalize_ineq(std::move(mi), Int(cs.get_num()), strict);
}

bool fm_feasible(int n, std::vector<LinIneq> sys) {
  if (n <= kFastVars) {
    std::vector<FastRow> fs(sys.size());
    bool ok = true;
    for (size_t i = 0; i < sys.size() && ok; ++i) ok = fast_from(n, sys[i], fs[i]);
    if (ok) {
      FastStatus f = fast_feasible(n, std::move(fs));
      if (f != FastStatus::Overflow) return f == FastStatus::Ok;
    }
  }
  if (!fm_compress(sys)) return false;
  std::vector<bool> done(n, false);
  for (int k = 0; k < n; ++k) {
    int v = pick_var(sys, done);
    done[v] = true;
    if (!fm_eliminate(sys, v)) return false;
  }
  return true;
}

std::optional<RatVec> fm_point(int n, std::vector<LinIneq> sys) {
  if (!fm_compress(sys)) return std::nullopt;
  std::vector<bool> done(n, false);
  std::vector<int> order;
  std::vector<std::vector<LinIneq>> stages;
  for (int k = 0; k < n; ++k) {
    int v = pick_var(sys, done);
    done[v] = true;
    order.push_back(v);
    stages.push_back(sys);
    if (!fm_eliminate(sys, v)) return std::nullopt;
  }
  RatVec x(n, Rat(0));
  for (int k = n - 1; k >= 0; --k) {
    int v = order[k];
    // bounds on x[v] from the stage still containing it, with later-assigned
    // variables substituted
    bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
    Rat lo, hi;
    for (auto& q : stages[k]) {
      if (q.m[v] == 0) continue;
      Rat rest = -q.c;
      for (size_t j = 0; j < q.m.size(); ++j)
        if (int(j) != v) rest += Rat(q.m[j]) * x[j];
      Rat bound = -rest / Rat(q.m[v]);
      if (q.m[v] > 0) {
        if (!has_lo || bound > lo || (bound == lo && q.strict)) {
          lo = bound;
          lo_strict = q.strict;
        }
        has_lo = true;
      } else {
        if (!has_hi || bound < hi || (bound == hi && q.strict)) {
          hi = bound;
          hi_strict = q.strict;
        }
        has_hi = true;
      }
    }
    if (has_lo && has_hi) {
      if (lo == hi) {
        if (lo_strict || hi_strict) return std::nullopt;
        x[v] = lo;
      } else {
        x[v] = (lo + hi) / 2;
      }
    } else if (has_lo) {
      x[v] = lo_strict ? lo + 1 : lo;
    } else if (has_hi) {
      x[v] = hi_strict ? hi - 1 : hi;
    } else {
      x[v] = 0;
    }
  }
  return x;
}

bool implies(int n, const std::vector<LinIneq>& sys, const LinIneq& q) {
  std::vector<LinIneq> neg = sys;
  IntVec m(q.m.size());
  for (size_t j = 0; j < m.size(); ++j) m[j] = -q.m[j];
  neg.push_back(LinIneq{std::move(m), -q.c, !q.strict});
  return !fm_feasible(n, std::move(neg));
}

bool is_empty(const HPolyhedron& p) { return !fm_feasible(p.n, p.ineqs); }

bool contains_point(const HPolyhedron& p, const RatVec& x) {
  for (auto& q : p.ineqs) {
    Rat v = eval(q.m, x);
    if (v < Rat(q.c) || (q.strict && v == Rat(q.c))) return false;
  }
  return true;
}

HPolyhedron intersect(const HPolyhedron& a, const HPolyhedron& b) {
  assert(a.n == b.n);
  HPolyhedron r = a;
  r.ineqs.insert(r.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  return r;
}

HPolyhedron irredundant(HPolyhedron p) {
  fm_compress(p.ineqs);
  for (size_t i = 0; i < p.ineqs.size();) {
    std::vector<LinIneq> rest;
    for (size_t j = 0; j < p.ineqs.size(); ++j)
      if (j != i) rest.push_back(p.ineqs[j]);
    if (implies(p.n, rest, p.ineqs[i]))
      p.ineqs.erase(p.ineqs.begin() + i);
    else
      ++i;
  }
  return p;
}

namespace {

// indices of inequalities holding with equality on all of p
std::vector<int> implicit_equalities(const HPolyhedron& p) {
  std::vector<int> eq;
  for (size_t i = 0; i < p.ineqs.size(); ++i) {
    const LinIneq& q = p.ineqs[i];
    IntVec m(q.m.size());
    for (size_t j = 0; j < m.size(); ++j) m[j] = -q.m[j];
    if (implies(p.n, p.ineqs, LinIneq{std::move(m), -q.c, false}))
      eq.push_back(int(i));
  }
  return eq;
}

}  // namespace

int poly_dim(const HPolyhedron& p) {
  if (is_empty(p)) return -1;
  std::vector<int> eq = implicit_equalities(p);
  RatMat M(int(eq.size()), p.n);
  for (size_t i = 0; i < eq.size(); ++i)
    for (int j = 0; j < p.n; ++j) M.at(int(i), j) = Rat(p.ineqs[eq[i]].m[j]);
  return p.n - rank(std::move(M));
}

RatVec relative_interior_point(const HPolyhedron& p) {
  std::set<int> eq;
  for (int i : implicit_equalities(p)) eq.insert(i);
  std::vector<LinIneq> sys;
  for (size_t i = 0; i < p.ineqs.size(); ++i) {
    if (eq.count(int(i))) {
      for (auto& r : equality_rows(p.ineqs[i].m, p.ineqs[i].c)) sys.push_back(r);
    } else {
      LinIneq q = p.ineqs[i];
      q.strict = true;
      sys.push_back(std::move(q));
    }
  }
  std::optional<RatVec> x = fm_point(p.n, std::move(sys));
  assert(x);
  return *x;
}

HPolyhedron face_at(const HPolyhedron& p, const RatVec& x) {
  assert(contains_point(p, x));
  HPolyhedron f = p;
  for (auto& q : p.ineqs)
    if (eval(q.m, x) == Rat(q.c))
      for (auto& r : equality_rows(q.m, q.c)) f.ineqs.push_back(r);
  return f;
}

bool subset_of(const HPolyhedron& a, const HPolyhedron& b) {
  assert(a.n == b.n);
  for (auto& q : b.ineqs)
    if (!implies(a.n, a.ineqs, q)) return false;
  return true;
}

bool poly_equal(const HPolyhedron& a, const HPolyhedron& b) {
  return subset_of(a, b) && subset_of(b, a);
}

bool strongly_convex(const HPolyhedron& p) {
  // lineality space 0: the normals span Q^n
  RatMat M(int(p.ineqs.size()), p.n);
  for (size_t i = 0; i < p.ineqs.size(); ++i)
    for (int j = 0; j < p.n; ++j) M.at(int(i), j) = Rat(p.ineqs[i].m[j]);
  return rank(std::move(M)) == p.n;
}

std::string poly_key(const HPolyhedron& p) {
  HPolyhedron r = irredundant(p);
  // include the affine hull so equal sets get equal keys
  for (int i : implicit_equalities(r)) {
    for (auto& row : equality_rows(r.ineqs[i].m, r.ineqs[i].c))
      r.ineqs.push_back(row);
  }
  fm_compress(r.ineqs);
  std::vector<LinIneq> rows = r.ineqs;
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  for (auto& q : rows) {
    for (auto& x : q.m) os << x << ",";
    os << ">=" << q.c << ";";
  }
  return os.str();
}

std::vector<RatVec> poly_vertices(const HPolyhedron& p) {
  HPolyhedron r = irredundant(p);
  std::vector<RatVec> out;
  std::set<std::string> seen;
  int k = int(r.ineqs.size());
  std::vector<int> idx(r.n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == r.n) {
      RatMat M(r.n, r.n);
      RatVec b(r.n);
      for (int i = 0; i < r.n; ++i) {
        for (int j = 0; j < r.n; ++j) M.at(i, j) = Rat(r.ineqs[idx[i]].m[j]);
        b[i] = Rat(r.ineqs[idx[i]].c);
      }
      LinSolve s = solve_rational(M, b);
      if (s.kind != LinSolve::Unique) return;
      if (!contains_point(r, s.x)) return;
      std::string key = format_vec(s.x);
      if (seen.insert(key).second) out.push_back(s.x);
      return;
    }
    for (int i = start; i < k; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (r.n == 0) return out;
  rec(0, 0);
  return out;
}

HPolyhedron asymptotic_cone(const HPolyhedron& p) {
  HPolyhedron c;
  c.n = p.n;
  for (auto& q : p.ineqs) c.ineqs.push_back(LinIneq{q.m, Int(0), false});
  return irredundant(std::move(c));
}

HPolyhedron cone_over_cell(const HPolyhedron& p) {
  HPolyhedron c;
  c.n = p.n + 1;
  for (auto& q : p.ineqs) {
    IntVec m = q.m;
    m.push_back(-q.c);
    c.ineqs.push_back(normalize_ineq(std::move(m), Int(0)));
  }
  IntVec last(p.n + 1, Int(0));
  last[p.n] = 1;
  c.ineqs.push_back(LinIneq{std::move(last), Int(0), false});
  return c;
}

bool check_complex(const PolyhedralComplex& p) {
  for (auto& cell : p.cells) {
    if (is_empty(cell)) return false;
    if (!strongly_convex(cell)) return false;
  }
  for (size_t i = 0; i < p.cells.size(); ++i)
    for (size_t j = i + 1; j < p.cells.size(); ++j) {
      HPolyhedron common = intersect(p.cells[i], p.cells[j]);
      if (is_empty(common)) continue;
      RatVec z = relative_interior_point(common);
      if (!poly_equal(face_at(p.cells[i], z), common)) return false;
      if (!poly_equal(face_at(p.cells[j], z), common)) return false;
    }
  return true;
}

bool check_complete(const PolyhedralComplex& p) {
  for (size_t i = 0; i < p.cells.size(); ++i) {
    HPolyhedron cell = irredundant(p.cells[i]);
    if (poly_dim(cell) != p.n) return false;
    for (auto& q : cell.ineqs) {
      HPolyhedron facet = cell;
      for (auto& r : equality_rows(q.m, q.c)) facet.ineqs.push_back(r);
      if (poly_dim(facet) != p.n - 1) continue;
      int shared = 0;
      for (size_t j = 0; j < p.cells.size(); ++j) {
        if (j == i) continue;
        if (subset_of(facet, p.cells[j])) ++shared;
      }
      if (shared != 1) return false;
    }
  }
  return true;
}

Fan asymptotic_fan(const PolyhedralComplex& p) {
  if (!check_complex(p) || !check_complete(p)) throw IncompleteComplex();
  Fan f;
  f.n = p.n;
  std::set<std::string> seen;
  std::vector<HPolyhedron> cones;
  for (auto& cell : p.cells) {
    HPolyhedron c = asymptotic_cone(cell);
    if (seen.insert(poly_key(c)).second) cones.push_back(std::move(c));
  }
  // keep the maximal cones; lower-dimensional limits are faces of these
  for (size_t i = 0; i < cones.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < cones.size() && maximal; ++j)
      if (j != i && subset_of(cones[i], cones[j])) maximal = false;
    if (maximal) f.cones.push_back(cones[i]);
  }
  return f;
}

PolyhedralComplex translate_fan(const Fan& f, const RatVec& v) {
  PolyhedralComplex p;
  p.n = f.n;
  for (auto& cone : f.cones) {
    HPolyhedron cell;
    cell.n = f.n;
    for (auto& q : cone.ineqs) {
      RatVec m(f.n);
      for (int j = 0; j < f.n; ++j) m[j] = Rat(q.m[j]);
      cell.ineqs.push_back(normalize_ineq(m, eval(q.m, v)));
    }
    p.cells.push_back(std::move(cell));
  }
  return p;
}

namespace {

// [v1, v2] + tau as an H-polyhedron: eliminate the segment parameter
HPolyhedron segment_plus_cone(const HPolyhedron& tau, const RatVec& v1,
                              const RatVec& v2) {
  int n = tau.n;
  // variables (x, t): x - v1 - t (v2 - v1) in tau, 0 <= t <= 1
  std::vector<LinIneq> sys;
  for (auto& q : tau.ineqs) {
    IntVec m(n + 1);
    for (int j = 0; j < n; ++j) m[j] = q.m[j];
    Rat me = 0, mv = 0;
    for (int j = 0; j < n; ++j) {
      me += Rat(q.m[j]) * (v2[j] - v1[j]);
      mv += Rat(q.m[j]) * v1[j];
    }
    // <m, x> - t <m, v2 - v1> >= <m, v1>
    RatVec mr(n + 1);
    for (int j = 0; j < n; ++j) mr[j] = Rat(q.m[j]);
    mr[n] = -me;
    sys.push_back(normalize_ineq(mr, mv));
  }
  IntVec tpos(n + 1, Int(0)), tneg(n + 1, Int(0));
  tpos[n] = 1;
  tneg[n] = -1;
  sys.push_back(LinIneq{tpos, Int(0), false});
  sys.push_back(LinIneq{tneg, Int(-1), false});
  fm_eliminate(sys, n);
  HPolyhedron out;
  out.n = n;
  for (auto& q : sys) {
    IntVec m(q.m.begin(), q.m.begin() + n);
    out.ineqs.push_back(normalize_ineq(std::move(m), q.c, false));
  }
  return irredundant(std::move(out));
}

}  // namespace

PolyhedralComplex edge_decomposition(const Fan& sigma, const RatVec& v1,
                                     const RatVec& v2) {
  const int n = sigma.n;
  RatVec e(n);
  for (int j = 0; j < n; ++j) e[j] = v2[j] - v1[j];
  // maximal cones containing the direction of the edge (the closed star)
  std::vector<int> star;
  for (size_t i = 0; i < sigma.cones.size(); ++i)
    if (contains_point(sigma.cones[i], e)) star.push_back(int(i));
  if (star.empty()) throw RayNotInFan("edge direction not in the fan support");
  std::set<int> in_star(star.begin(), star.end());

  PolyhedralComplex p;
  p.n = n;
  auto translate = [&](const HPolyhedron& cone, const RatVec& v) {
    HPolyhedron cell;
    cell.n = n;
    for (auto& q : cone.ineqs) {
      RatVec m(n);
      for (int j = 0; j < n; ++j) m[j] = Rat(q.m[j]);
      cell.ineqs.push_back(normalize_ineq(m, eval(q.m, v)));
    }
    return cell;
  };
  // type I at v1 outside the star, type II at v2 on the star
  for (size_t i = 0; i < sigma.cones.size(); ++i)
    p.cells.push_back(translate(sigma.cones[i],
                                in_star.count(int(i)) ? v2 : v1));
  // type III: segment + boundary facet of the star
  std::set<std::string> seen;
  for (int i : star) {
    HPolyhedron cone = irredundant(sigma.cones[i]);
    for (auto& q : cone.ineqs) {
      HPolyhedron tau = cone;
      for (auto& r : equality_rows(q.m, q.c)) tau.ineqs.push_back(r);
      if (poly_dim(tau) != n - 1) continue;
      bool boundary = false;
      for (size_t j = 0; j < sigma.cones.size() && !boundary; ++j)
        if (!in_star.count(int(j)) && subset_of(tau, sigma.cones[j]))
          boundary = true;
      if (!boundary) continue;
      HPolyhedron strip = segment_plus_cone(tau, v1, v2);
      if (seen.insert(poly_key(strip)).second) p.cells.push_back(std::move(strip));
    }
  }
  return p;
}

PolyhedralComplex common_refinement(const PolyhedralComplex& a,
                                    const PolyhedralComplex& b) {
  PolyhedralComplex p;
  p.n = a.n;
  std::set<std::string> seen;
  for (auto& ca : a.cells)
    for (auto& cb : b.cells) {
      HPolyhedron c = intersect(ca, cb);
      if (poly_dim(c) != p.n) continue;
      c = irredundant(std::move(c));
      if (seen.insert(poly_key(c)).second) p.cells.push_back(std::move(c));
    }
  return p;
}

namespace {

// the minimal cone of the fan containing u must be a ray
void require_ray(const Fan& sigma, const IntVec& u) {
  RatVec x(sigma.n);
  for (int j = 0; j < sigma.n; ++j) x[j] = Rat(u[j]);
  for (auto& cone : sigma.cones)
    if (contains_point(cone, x)) {
      if (poly_dim(face_at(cone, x)) == 1) return;
      throw RayNotInFan("unbounded direction " + format_vec(x) +
                        " does not span a ray of the fan");
    }
  throw RayNotInFan("unbounded direction " + format_vec(x) +
                    " outside the fan support");
}

}  // namespace

PolyhedralComplex adapted_decomposition(const std::vector<CurveSolution>& curves,
                                        const Fan& sigma,
                                        const std::vector<RatVec>& extra_points) {
  std::vector<PolyhedralComplex> parts;
  for (auto& s : curves) {
    const TropicalType& t = s.type;
    for (size_t ei = 0; ei < t.edges.size(); ++ei) {
      const TypeEdge& e = t.edges[ei];
      if (!e.bounded()) {
        require_ray(sigma, e.dir);
        parts.push_back(translate_fan(sigma, s.vertex_positions[e.v0]));
      } else {
        parts.push_back(edge_decomposition(sigma, s.vertex_positions[e.v0],
                                           s.vertex_positions[e.v1]));
      }
    }
    for (auto& v : s.vertex_positions) parts.push_back(translate_fan(sigma, v));
  }
  for (auto& pt : extra_points) parts.push_back(translate_fan(sigma, pt));
  if (parts.empty()) parts.push_back(translate_fan(sigma, RatVec(sigma.n, Rat(0))));
  PolyhedralComplex acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = common_refinement(acc, parts[i]);
  return acc;
}

bool contains_in_one_skeleton(const PolyhedralComplex& p, const RatVec& a,
                              const RatVec& b, bool ray) {
  const int n = p.n;
  RatVec d(n);
  for (int j = 0; j < n; ++j) d[j] = ray ? b[j] : b[j] - a[j];
  std::set<Rat> cuts{Rat(0)};
  Rat tmax(1);
  for (auto& cell : p.cells)
    for (auto& q : cell.ineqs) {
      Rat md = eval(q.m, d);
      if (md == 0) continue;
      Rat t = (Rat(q.c) - eval(q.m, a)) / md;
      if (t > 0 && (ray || t < 1)) {
        cuts.insert(t);
        if (t > tmax) tmax = t;
      }
    }
  cuts.insert(ray ? tmax + 1 : Rat(1));
  std::vector<Rat> ts(cuts.begin(), cuts.end());
  std::vector<Rat> samples = ts;
  for (size_t i = 0; i + 1 < ts.size(); ++i) samples.push_back((ts[i] + ts[i + 1]) / 2);
  for (auto& t : samples) {
    RatVec z(n);
    for (int j = 0; j < n; ++j) z[j] = a[j] + t * d[j];
    bool ok = false;
    for (auto& cell : p.cells) {
      if (!contains_point(cell, z)) continue;
      if (poly_dim(face_at(cell, z)) <= 1) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

Int integral_rescale(const PolyhedralComplex& p,
                     const std::vector<CurveSolution>& curves) {
  Int k = 1;
  std::set<std::string> seen;
  for (auto& cell : p.cells)
    for (auto& v : poly_vertices(cell)) {
      if (!seen.insert(format_vec(v)).second) continue;
      for (auto& q : v) k = lcm(k, Int(q.get_den()));
    }
  for (auto& s : curves)
    for (auto& [ei, len] : s.edge_lengths) {
      // k * len must be an integer divisible by the weight
      Int w = s.type.edges[ei].weight;
      Int pnum = Int(len.get_num()), qden = Int(len.get_den());
      Int need = w * qden;
      k = lcm(k, need / gcd(pnum, need));
    }
  return k;
}

}  // namespace tropic
