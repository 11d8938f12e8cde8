#include "tropic/constraint.hpp"

#include <cassert>

#include "tropic/polyhedral.hpp"
#include <cstdlib>
#include <iostream>

namespace tropic {

ConstraintValidation validate_constraints(const Degree& d,
                                          const std::vector<AffineConstraint>& A) {
  ConstraintValidation r;
  int codim_sum = 0;
  for (size_t i = 0; i < A.size(); ++i) {
    const AffineConstraint& c = A[i];
    if (c.n != d.n || int(c.base.size()) != d.n) {
      r.reason = ConstraintValidation::RankMismatch;
      r.detail = "constraint " + std::to_string(i) + " has wrong ambient rank";
      return r;
    }
    if (c.codim() < 1) {
      r.reason = ConstraintValidation::RankMismatch;
      r.detail = "constraint " + std::to_string(i) + " has codimension < 1";
      return r;
    }
    if (!c.directions.empty()) {
      RatMat M(int(c.directions.size()), c.n);
      for (size_t j = 0; j < c.directions.size(); ++j)
        for (int k = 0; k < c.n; ++k) M.at(int(j), k) = Rat(c.directions[j][k]);
      if (rank(M) != int(c.directions.size())) {
        r.reason = ConstraintValidation::RankMismatch;
        r.detail = "constraint " + std::to_string(i) + " has dependent directions";
        return r;
      }
      LatticeBasis sub{c.n, c.directions};
      if (lattice_index(sub, saturate(c.directions, c.n)) != 1) {
        r.reason = ConstraintValidation::UnsaturatedBasis;
        r.detail = "constraint " + std::to_string(i) + " basis not saturated";
        return r;
      }
    }
    codim_sum += c.codim();
  }
  if (codim_sum != d.e() + d.n - 3) {
    r.reason = ConstraintValidation::CodimensionSum;
    r.detail = "sum of codimensions " + std::to_string(codim_sum) +
               " != e+n-3 = " + std::to_string(d.e() + d.n - 3);
    return r;
  }
  r.ok = true;
  return r;
}

MatchResult match_type(const TropicalType& t, const std::vector<AffineConstraint>& A) {
  const int n = t.n;
  const int V = t.num_vertices;
  const int l = int(t.marks.size());
  std::vector<int> bounded;  // edge indices
  for (size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i].bounded()) bounded.push_back(int(i));
  std::vector<int> lambda_col(t.edges.size(), -1);
  int col = n * V;
  for (int ei : bounded) lambda_col[ei] = col++;
  std::vector<int> t_col(l), s_col(l);
  for (int i = 0; i < l; ++i) {
    t_col[i] = col++;
    s_col[i] = col;
    col += int(A[i].directions.size());
  }
  const int N = col;
  const int rows = n * int(bounded.size()) + n * l;
  // full system in (h, lambda, t, s) is square exactly when sum d_i = e+n-3
  assert(rows == N);

  RatMat M(rows, N);
  RatVec b(rows, Rat(0));
  int row = 0;
  for (int ei : bounded) {
    const TypeEdge& e = t.edges[ei];
    int lo = lower_end(e), hi = e.v0 + e.v1 - lo;
    IntVec u = lower_dir(e);
    for (int j = 0; j < n; ++j, ++row) {
      M.at(row, n * hi + j) = 1;
      M.at(row, n * lo + j) -= 1;
      M.at(row, lambda_col[ei]) = -Rat(u[j]);
    }
  }
  for (int i = 0; i < l; ++i) {
    const TypeEdge& e = t.edges[t.marks[i]];
    int lo = lower_end(e);
    IntVec u = lower_dir(e);
    for (int j = 0; j < n; ++j, ++row) {
      M.at(row, n * lo + j) = 1;
      M.at(row, t_col[i]) = Rat(u[j]);
      for (size_t k = 0; k < A[i].directions.size(); ++k)
        M.at(row, s_col[i] + int(k)) = -Rat(A[i].directions[k][j]);
      b[row] = A[i].base[j];
    }
  }

  LinSolve sol = solve_rational(M, b);
  MatchResult res;
  if (sol.kind == LinSolve::None) {
    res.kind = MatchResult::NoSolution;
    res.reason = MatchResult::Inconsistent;
    return res;
  }
  if (sol.kind == LinSolve::Underdetermined) {
    // Degenerate only when the solution family meets the cell of actual
    // curves (all lambda > 0, markings on their edges); a family confined to
    // the boundary consists of contracted-edge limits that belong to other
    // types, so this type contributes nothing.
    RatMat Ab(rows, N + 1);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < N; ++j) Ab.at(i, j) = M.at(i, j);
      Ab.at(i, N) = b[i];
    }
    std::vector<int> pivots = rref(Ab);
    RatVec x0(N, Rat(0));
    std::vector<bool> is_pivot(N, false);
    for (size_t r = 0; r < pivots.size(); ++r) {
      assert(pivots[r] < N);  // consistent by Underdetermined
      x0[pivots[r]] = Ab.at(int(r), N);
      is_pivot[pivots[r]] = true;
    }
    std::vector<RatVec> K;  // nullspace basis read off the same rref
    for (int f = 0; f < N; ++f) {
      if (is_pivot[f]) continue;
      RatVec v(N, Rat(0));
      v[f] = 1;
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -Ab.at(int(r), f);
      K.push_back(std::move(v));
    }
    const int k = int(K.size());
    auto family_row = [&](const RatVec& coef, const Rat& rhs, bool strict) {
      // <coef, x0 + sum y_j K_j> >= rhs as a row over y
      RatVec m(k, Rat(0));
      Rat base = rhs;
      for (int j = 0; j < k; ++j)
        for (int c2 = 0; c2 < N; ++c2) m[j] += coef[c2] * K[j][c2];
      for (int c2 = 0; c2 < N; ++c2) base -= coef[c2] * x0[c2];
      return normalize_ineq(m, base, strict);
    };
    std::vector<LinIneq> region;
    RatVec coef(N, Rat(0));
    for (int ei : bounded) {
      coef[lambda_col[ei]] = 1;
      region.push_back(family_row(coef, Rat(0), /*strict=*/true));
      coef[lambda_col[ei]] = 0;
    }
    for (int i = 0; i < l; ++i) {
      coef[t_col[i]] = 1;
      region.push_back(family_row(coef, Rat(0), /*strict=*/true));
      if (t.edges[t.marks[i]].bounded()) {
        coef[t_col[i]] = -1;
        coef[lambda_col[t.marks[i]]] = 1;
        region.push_back(family_row(coef, Rat(0), /*strict=*/true));
        coef[lambda_col[t.marks[i]]] = 0;
      }
      coef[t_col[i]] = 0;
    }
    if (getenv("TROPIC_DUMP_UNDERDET")) {
      std::cerr << "UNDERDET N=" << N << " k=" << k << " x0:";
      for (int c2 = 0; c2 < N; ++c2) std::cerr << " " << x0[c2];
      std::cerr << "\n";
      for (int j = 0; j < k; ++j) {
        std::cerr << "  K" << j << ":";
        for (int c2 = 0; c2 < N; ++c2) std::cerr << " " << K[j][c2];
        std::cerr << "\n";
      }
      std::cerr << "  cols: nV=" << n * V << " lambda:";
      for (int ei : bounded) std::cerr << " " << lambda_col[ei];
      std::cerr << " t:";
      for (int i = 0; i < l; ++i) std::cerr << " " << t_col[i];
      std::cerr << "\n";
    }
    if (!fm_feasible(k, std::move(region))) {
      res.kind = MatchResult::NoSolution;
      res.reason = MatchResult::PositivityFail;
      return res;
    }
    // The family meets the open cell. The bases enter only the marking rows
    // of b, so the system stays consistent under every translation of the
    // constraints iff each left-null vector of M vanishes there. Such a family
    // is structural - resampling cannot remove it - and its singular matrix
    // gives multiplicity 0, so the type contributes nothing. Otherwise generic
    // translation breaks consistency: a positional accident, so resample.
    RatMat Mt(N, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < N; ++j) Mt.at(j, i) = M.at(i, j);
    std::vector<int> tpiv = rref(Mt);
    std::vector<bool> row_pivot(rows, false);
    for (int p : tpiv) row_pivot[p] = true;
    const int mark_row0 = n * int(bounded.size());
    bool structural = true;
    for (int f = 0; f < rows && structural; ++f) {
      if (row_pivot[f]) continue;
      // left-null vector: y[f] = 1, y[tpiv[r]] = -Mt[r][f]
      if (f >= mark_row0) structural = false;
      for (size_t r = 0; r < tpiv.size() && structural; ++r)
        if (tpiv[r] >= mark_row0 && Mt.at(int(r), f) != 0) structural = false;
    }
    if (structural) {
      res.kind = MatchResult::NoSolution;
      res.reason = MatchResult::ZeroFamily;
    } else {
      res.kind = MatchResult::Degenerate;
    }
    return res;
  }

  CurveSolution cs;
  cs.type = t;
  cs.vertex_positions.assign(V, RatVec(n));
  for (int v = 0; v < V; ++v)
    for (int j = 0; j < n; ++j) cs.vertex_positions[v][j] = sol.x[n * v + j];
  for (int ei : bounded) cs.edge_lengths[ei] = sol.x[lambda_col[ei]];
  for (int i = 0; i < l; ++i) {
    cs.t_params.push_back(sol.x[t_col[i]]);
    RatVec s(A[i].directions.size());
    for (size_t k = 0; k < s.size(); ++k) s[k] = sol.x[s_col[i] + int(k)];
    cs.s_params.push_back(std::move(s));
  }

  for (int ei : bounded)
    if (cs.edge_lengths[ei] <= 0) {
      res.kind = MatchResult::NoSolution;
      res.reason = MatchResult::PositivityFail;
      return res;
    }
  for (int i = 0; i < l; ++i) {
    const TypeEdge& e = t.edges[t.marks[i]];
    if (cs.t_params[i] < 0) {
      res.kind = MatchResult::NoSolution;
      res.reason = e.bounded() ? MatchResult::SegmentFail : MatchResult::PositivityFail;
      return res;
    }
    if (e.bounded() && cs.t_params[i] > cs.edge_lengths[t.marks[i]]) {
      res.kind = MatchResult::NoSolution;
      res.reason = MatchResult::SegmentFail;
      return res;
    }
  }
  res.kind = MatchResult::Matched;
  res.solution = std::move(cs);
  return res;
}

namespace {

// an edge image: p + s*d for s in [0, len] (bounded) or [0, inf)
struct EdgeGeom {
  RatVec p;
  RatVec d;
  bool bounded;
  Rat len;
};

EdgeGeom edge_geom(const CurveSolution& s, int ei) {
  const TypeEdge& e = s.type.edges[ei];
  EdgeGeom g;
  g.bounded = e.bounded();
  int lo = lower_end(e);
  g.p = s.vertex_positions[lo];
  IntVec u = lower_dir(e);
  g.d = to_rat(u);
  if (g.bounded) g.len = s.edge_lengths.at(ei);
  return g;
}

struct Intersection {
  enum Kind { Empty, Point, Overlap } kind = Empty;
  Rat s1, s2;  // parameters of a Point on each edge
  Rat overlap_len;
};

Intersection intersect(const EdgeGeom& a, const EdgeGeom& b) {
  const int n = int(a.p.size());
  RatMat M(n, 2);
  RatVec rhs(n);
  for (int j = 0; j < n; ++j) {
    M.at(j, 0) = a.d[j];
    M.at(j, 1) = -b.d[j];
    rhs[j] = b.p[j] - a.p[j];
  }
  LinSolve sol = solve_rational(M, rhs);
  Intersection r;
  if (sol.kind == LinSolve::None) return r;
  if (sol.kind == LinSolve::Unique) {
    Rat s = sol.x[0], t2 = sol.x[1];
    if (s < 0 || t2 < 0) return r;
    if (a.bounded && s > a.len) return r;
    if (b.bounded && t2 > b.len) return r;
    r.kind = Intersection::Point;
    r.s1 = s;
    r.s2 = t2;
    return r;
  }
  // parallel and collinear: b.d = k * a.d, and b.p on a's line
  int piv = 0;
  while (a.d[piv] == 0) ++piv;
  Rat k = b.d[piv] / a.d[piv];
  Rat s0 = (b.p[piv] - a.p[piv]) / a.d[piv];  // b's start in a's parameter
  // b covers, in a's parameter, [s0, s0 + k*len_b] (orientation by sign of k)
  bool b_up = k > 0;
  // interval of b in a-parameter:
  Rat lo = s0, hi = s0;
  bool lo_inf = false, hi_inf = false;
  if (b.bounded) {
    Rat other = s0 + k * b.len;
    lo = std::min(s0, other);
    hi = std::max(s0, other);
  } else if (b_up) {
    hi_inf = true;
  } else {
    lo_inf = true;
  }
  // intersect with a's range [0, len_a] or [0, inf)
  Rat L = lo_inf ? Rat(0) : std::max(lo, Rat(0));
  if (lo_inf) L = 0;
  if (a.bounded) {
    Rat H = hi_inf ? a.len : std::min(hi, a.len);
    if (H > L) {
      r.kind = Intersection::Overlap;
      r.overlap_len = H - L;
    } else if (H == L) {
      r.kind = Intersection::Point;
      r.s1 = L;
    }
  } else {
    if (hi_inf || hi > L) {
      r.kind = Intersection::Overlap;
      r.overlap_len = hi_inf ? Rat(-1) : hi - L;  // -1: unbounded overlap
    } else if (hi == L) {
      r.kind = Intersection::Point;
      r.s1 = L;
    }
  }
  return r;
}

bool in_constraint_span(const AffineConstraint& c, const RatVec& diff) {
  if (c.directions.empty()) return is_zero(diff);
  RatMat M(c.n, int(c.directions.size()));
  for (int j = 0; j < c.n; ++j)
    for (size_t k = 0; k < c.directions.size(); ++k)
      M.at(j, int(k)) = Rat(c.directions[k][j]);
  return solve_rational(M, diff).kind != LinSolve::None;
}

}  // namespace

GenericityReport genericity_audit(const CurveSolution& s,
                                  const std::vector<AffineConstraint>& A) {
  GenericityReport rep;
  const TropicalType& t = s.type;
  const int n = t.n;

  // types are trivalent by construction; keep the clause honest anyway
  {
    std::vector<int> valence(t.num_vertices, 0);
    for (auto& e : t.edges) {
      ++valence[e.v0];
      if (e.bounded()) ++valence[e.v1];
    }
    for (int v = 0; v < t.num_vertices; ++v)
      if (valence[v] != 3)
        rep.violations.push_back({GenericityViolation::TrivalenceFail,
                                  "vertex " + std::to_string(v)});
  }

  for (int v = 0; v < t.num_vertices; ++v)
    for (size_t i = 0; i < A.size(); ++i) {
      RatVec diff(n);
      for (int j = 0; j < n; ++j) diff[j] = s.vertex_positions[v][j] - A[i].base[j];
      if (in_constraint_span(A[i], diff))
        rep.violations.push_back(
            {GenericityViolation::VertexOnConstraint,
             "vertex " + std::to_string(v) + " on constraint " + std::to_string(i)});
    }

  for (int v = 0; v < t.num_vertices; ++v)
    for (int w = v + 1; w < t.num_vertices; ++w)
      if (s.vertex_positions[v] == s.vertex_positions[w])
        rep.violations.push_back(
            {GenericityViolation::NonInjectiveVertices,
             "vertices " + std::to_string(v) + "," + std::to_string(w)});

  for (size_t i = 0; i < t.marks.size(); ++i) {
    const TypeEdge& e = t.edges[t.marks[i]];
    bool at_vertex = s.t_params[i] == 0 ||
                     (e.bounded() && s.t_params[i] == s.edge_lengths.at(t.marks[i]));
    if (at_vertex)
      rep.violations.push_back({GenericityViolation::MarkedPointAtVertex,
                                "marking " + std::to_string(i)});
  }

  // injectivity of the map: edge-image intersections
  const int m = int(t.edges.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const TypeEdge& a = t.edges[i];
      const TypeEdge& b = t.edges[j];
      bool adjacent = a.v0 == b.v0 || (b.bounded() && a.v0 == b.v1) ||
                      (a.bounded() && (a.v1 == b.v0 || (b.bounded() && a.v1 == b.v1)));
      Intersection x = intersect(edge_geom(s, i), edge_geom(s, j));
      std::string wit = "edges " + std::to_string(i) + "," + std::to_string(j);
      if (x.kind == Intersection::Overlap) {
        // adjacent edges touching only at the shared vertex never report
        // Overlap, so any overlap is a genuine positive-length double cover
        rep.violations.push_back({GenericityViolation::NonInjectiveMap, wit});
      } else if (x.kind == Intersection::Point && !adjacent) {
        if (n > 2)
          rep.violations.push_back({GenericityViolation::NonInjectiveMap, wit});
        else
          ++rep.transversal_crossings;  // nodes of the plane curve
      }
    }
  return rep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<AffineConstraint> random_generic_translation(
    const std::vector<AffineConstraint>& A, std::uint64_t seed, long box) {
  std::vector<AffineConstraint> out = A;
  if (box == 0) return out;
  std::uint64_t state = seed;
  const long denom = 997;
  for (AffineConstraint& c : out)
    for (Rat& coord : c.base) {
      long num = long(splitmix64(state) % std::uint64_t(2 * box + 1)) - box;
      coord += Rat(num, denom);
    }
  return out;
}

}  // namespace tropic
