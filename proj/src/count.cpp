#include "tropic/count.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace tropic {

#ifdef TROPIC_DP_STATS
inline long g_fm_point = 0, g_sat_hit = 0, g_merge_pairs = 0, g_peak = 0, g_assign_peak = 0, g_fallbacks = 0;
inline long g_feas_ok = 0, g_feas_no = 0;
#define DP_STAT(x) (x)
#else
#define DP_STAT(x)
#endif

namespace {

// thrown when the machine-word DP overflows; the caller reruns the type
// with exact rows
struct FastOverflow {};

// system policies for the subtree DP: exact GMP rows or machine words
struct ExactPolicy {
  using Sys = std::vector<LinIneq>;

  static Sys convert(int, const std::vector<LinIneq>& in) { return in; }
  static void append(Sys& a, const Sys& b) {
    a.insert(a.end(), b.begin(), b.end());
  }
  static bool feasible(int nvars, const Sys& s) { return fm_feasible(nvars, s); }
  static bool compress(int, Sys& s) { return fm_compress(s); }
  static void begin_lambda(Sys& s, int n) {
    for (auto& q : s) q.m.push_back(Int(0));
    IntVec lp(n + 1, Int(0));
    lp[n] = 1;
    s.push_back(LinIneq{std::move(lp), Int(0), false});
  }
  // substitute child = parent - lambda * u into every row
  static void fold_lambda(Sys& s, int n, const IntVec& u) {
    for (auto& q : s) {
      Int mu = 0;
      for (int j = 0; j < n; ++j) mu += q.m[j] * u[j];
      q.m[n] -= mu;
      q = normalize_ineq(std::move(q.m), std::move(q.c));
    }
  }
  static bool eliminate_lambda(Sys& s, int n) {
    if (!fm_eliminate(s, n)) return false;
    for (auto& q : s) q.m.pop_back();
    return true;
  }
  static void reduce(int n, Sys& s) {
    if (int(s.size()) <= 12 * n) return;
    HPolyhedron p = irredundant(HPolyhedron{n, std::move(s)});
    s = std::move(p.ineqs);
  }
};

struct FastPolicy {
  using Sys = std::vector<FastRow>;

  static Sys convert(int nv, const std::vector<LinIneq>& in) {
    Sys out(in.size());
    for (size_t i = 0; i < in.size(); ++i)
      if (!fast_from(nv, in[i], out[i])) throw FastOverflow{};
    return out;
  }
  static void append(Sys& a, const Sys& b) {
    a.insert(a.end(), b.begin(), b.end());
  }
  static bool feasible(int nvars, const Sys& s) {
    FastStatus f = fast_feasible(nvars, s);
    if (f == FastStatus::Overflow) throw FastOverflow{};
    DP_STAT(f == FastStatus::Ok ? ++g_feas_ok : ++g_feas_no);
    return f == FastStatus::Ok;
  }
  static bool compress(int nvars, Sys& s) {
    return fast_compress(nvars, s) == FastStatus::Ok;
  }
  static void begin_lambda(Sys& s, int n) {
    FastRow lp;
    lp.m.fill(0);
    lp.m[n] = 1;
    lp.c = 0;
    lp.strict = false;
    s.push_back(lp);
  }
  static void fold_lambda(Sys& s, int n, const IntVec& u) {
    std::array<long long, kFastVars> ui{};
    for (int j = 0; j < n; ++j) {
      if (!u[j].fits_slong_p()) throw FastOverflow{};
      ui[j] = u[j].get_si();
    }
    for (auto& q : s) {
      long long mu = 0;
      for (int j = 0; j < n; ++j) {
        long long x;
        if (__builtin_mul_overflow(q.m[j], ui[j], &x) ||
            __builtin_add_overflow(mu, x, &mu))
          throw FastOverflow{};
      }
      if (__builtin_sub_overflow(q.m[n], mu, &q.m[n])) throw FastOverflow{};
      fast_normalize(n + 1, q);
    }
  }
  static bool eliminate_lambda(Sys& s, int n) {
    FastStatus f = fast_eliminate(n + 1, s, n);
    if (f == FastStatus::Overflow) throw FastOverflow{};
    return f == FastStatus::Ok;
  }
  static void reduce(int n, Sys& s) {
    if (int(s.size()) > 2 * n) fast_irredundant(n, s);
  }
};

struct TypeMatcher {
  const TropicalType& t;
  const std::vector<AffineConstraint>& A;
  const CountOptions& opts;
  int l;
  unsigned full_mask;
  std::vector<std::vector<int>> inc;   // vertex -> incident edges
  std::vector<std::vector<int>> dist;  // edge distances
  // integral normal rows (m, c) with <m, x> = c cutting out each constraint
  std::vector<std::vector<std::pair<IntVec, Int>>> mark_eq;

  // cond[e][i]: rows forcing marking i onto edge e, over the position of the
  // vertex the DP sees the edge from (plus the length column for bounded
  // edges); nullopt when the marking can never lie on the edge
  std::vector<std::vector<std::optional<std::vector<LinIneq>>>> cond;
  // pair_ok[e][i][j]: markings i and j can share edge e
  std::vector<std::vector<std::vector<char>>> pair_ok;
  // sub_b[e]: bounded edges in the child subtree of bounded edge e, e included
  std::vector<int> sub_b;
  std::vector<int> codims;  // d_i per marking

  void init() {
    inc.assign(t.num_vertices, {});
    for (size_t i = 0; i < t.edges.size(); ++i) {
      inc[t.edges[i].v0].push_back(int(i));
      if (t.edges[i].bounded()) inc[t.edges[i].v1].push_back(int(i));
    }
    dist = edge_distances(t);
    mark_eq.resize(l);
    for (int i = 0; i < l; ++i) {
      std::vector<RatVec> normals;
      if (A[i].directions.empty()) {
        for (int j = 0; j < t.n; ++j) {
          RatVec m(t.n, Rat(0));
          m[j] = 1;
          normals.push_back(std::move(m));
        }
      } else {
        RatMat D(int(A[i].directions.size()), t.n);
        for (size_t r = 0; r < A[i].directions.size(); ++r)
          for (int j = 0; j < t.n; ++j) D.at(int(r), j) = Rat(A[i].directions[r][j]);
        normals = nullspace(D);
      }
      for (auto& m : normals) {
        Rat c = 0;
        for (int j = 0; j < t.n; ++j) c += m[j] * A[i].base[j];
        LinIneq q = normalize_ineq(m, c);
        mark_eq[i].push_back({std::move(q.m), std::move(q.c)});
      }
    }
    // orient every bounded edge child -> parent for the DP rooted at vertex 0
    std::vector<int> depth(t.num_vertices, -1);
    depth[0] = 0;
    std::function<void(int)> dfs = [&](int v) {
      for (int ei : inc[v]) {
        const TypeEdge& e = t.edges[ei];
        if (!e.bounded()) continue;
        int w = e.v0 + e.v1 - v;
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        dfs(w);
      }
    };
    dfs(0);
    // bounded-subtree sizes for the dimension-count prune
    sub_b.assign(t.edges.size(), 0);
    std::vector<int> below(t.num_vertices, 0);
    std::function<void(int)> count_below = [&](int v) {
      for (int ei : inc[v]) {
        const TypeEdge& e = t.edges[ei];
        if (!e.bounded()) continue;
        int w = e.v0 + e.v1 - v;
        if (depth[w] != depth[v] + 1) continue;
        count_below(w);
        sub_b[ei] = below[w] + 1;
        below[v] += sub_b[ei];
      }
    };
    count_below(0);
    codims.resize(l);
    for (int i = 0; i < l; ++i) codims[i] = A[i].codim();
    const int n = t.n;
    cond.assign(t.edges.size(), {});
    pair_ok.assign(t.edges.size(), {});
    for (size_t ei = 0; ei < t.edges.size(); ++ei) {
      const TypeEdge& e = t.edges[ei];
      IntVec u;
      int nv;
      if (e.bounded()) {
        int child = depth[e.v0] > depth[e.v1] ? e.v0 : e.v1;
        u = (e.v0 == child) ? e.dir : neg(e.dir);
        nv = n + 1;
      } else {
        u = e.dir;
        nv = n;
      }
      cond[ei].resize(l);
      for (int i = 0; i < l; ++i) {
        std::vector<LinIneq> sys = marking_rows(i, u, nv);
        if (!fm_eliminate(sys, nv)) continue;
        for (auto& q : sys) q.m.pop_back();
        cond[ei][i] = std::move(sys);
      }
      pair_ok[ei].assign(l, std::vector<char>(l, 0));
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
          if (!cond[ei][i] || !cond[ei][j]) continue;
          std::vector<LinIneq> sys = *cond[ei][i];
          sys.insert(sys.end(), cond[ei][j]->begin(), cond[ei][j]->end());
          if (nv > n) {
            IntVec lp(nv, Int(0));
            lp[n] = 1;
            sys.push_back(LinIneq{std::move(lp), Int(0), false});
          }
          pair_ok[ei][i][j] = pair_ok[ei][j][i] = fm_feasible(nv, std::move(sys));
        }
    }
  }

  // rows over nv+1 variables putting marking i at x + s u with s >= 0 in
  // column nv, and s <= the length column n when the edge is bounded
  std::vector<LinIneq> marking_rows(int i, const IntVec& u, int nv) const {
    std::vector<LinIneq> sys;
    for (auto& [m, c] : mark_eq[i]) {
      IntVec row(nv + 1, Int(0));
      Int mu = 0;
      for (int j = 0; j < t.n; ++j) {
        row[j] = m[j];
        mu += m[j] * u[j];
      }
      row[nv] = mu;
      sys.push_back(normalize_ineq(row, c));
      for (auto& x : row) x = -x;
      sys.push_back(normalize_ineq(std::move(row), -c));
    }
    IntVec spos(nv + 1, Int(0));
    spos[nv] = 1;
    sys.push_back(LinIneq{std::move(spos), Int(0), false});
    if (nv > t.n) {
      IntVec sup(nv + 1, Int(0));
      sup[t.n] = 1;
      sup[nv] = -1;
      sys.push_back(LinIneq{std::move(sup), Int(0), false});
    }
    return sys;
  }

  bool dist_ok(const std::vector<int>& assign, int mark, int edge) const {
    if (!opts.distance_pruning) return true;
    for (int j = 0; j < l; ++j)
      if (assign[j] >= 0 && dist[assign[j]][edge] < A[j].codim() + A[mark].codim() - t.n)
        return false;
    return true;
  }

  // a crossed subtree with b bounded edges supports exactly n + b position
  // parameters, so marking codims summing outside [b, n+b] force a singular
  // square system on one side of the cut
  bool dim_count_ok(int dsum, int ei) const {
    if (!opts.distance_pruning) return true;
    return dsum >= sub_b[ei] && dsum <= t.n + sub_b[ei];
  }

  bool dist_compatible(const std::vector<int>& a, const std::vector<int>& b) const {
    if (!opts.distance_pruning) return true;
    for (int i = 0; i < l; ++i) {
      if (a[i] < 0) continue;
      for (int j = 0; j < l; ++j) {
        if (b[j] < 0) continue;
        if (dist[a[i]][b[j]] < A[i].codim() + A[j].codim() - t.n)
          return false;
      }
    }
    return true;
  }
};

// the subtree DP over a system policy: states pair a partial marking
// assignment with the polyhedron of feasible positions of the current vertex
// (or (vertex, lambda) while crossing an edge)
template <class P>
struct DPRun {
  using Sys = typename P::Sys;

  struct State {
    unsigned mask = 0;
    int dsum = 0;  // sum of marking codims in mask
    Sys pos;
    std::vector<int> assign;  // marking -> edge, -1 unassigned
  };

  const TypeMatcher& M;
  std::vector<std::vector<std::optional<Sys>>> cond;

  explicit DPRun(const TypeMatcher& m) : M(m) {
    cond.resize(M.cond.size());
    for (size_t e = 0; e < M.cond.size(); ++e) {
      int nv = M.t.edges[e].bounded() ? M.t.n + 1 : M.t.n;
      cond[e].resize(M.l);
      for (int i = 0; i < M.l; ++i)
        if (M.cond[e][i]) cond[e][i] = P::convert(nv, *M.cond[e][i]);
    }
  }

  // distribute subsets of free markings onto edge ei; the state systems run
  // over nvars variables
  void assign_edge(std::vector<State>& states, int ei, int nvars, int cap) const {
    std::vector<State> out;
    for (State& st : states) {
      std::vector<int> free;
      for (int i = 0; i < M.l; ++i)
        if (!(st.mask & (1u << i)) && cond[ei][i]) free.push_back(i);
      out.push_back(std::move(st));
      size_t base = out.size() - 1;
      std::function<void(size_t, size_t)> grow = [&](size_t k, size_t cur) {
        for (size_t i = k; i < free.size(); ++i) {
          int mk = free[i];
          if (out[cur].dsum + M.codims[mk] > cap) continue;
          if (!M.dist_ok(out[cur].assign, mk, ei)) continue;
          bool clash = false;
          for (int j = 0; j < M.l && !clash; ++j)
            if (out[cur].assign[j] == ei && !M.pair_ok[ei][mk][j]) clash = true;
          if (clash) continue;
          State nxt = out[cur];
          P::append(nxt.pos, *cond[ei][mk]);
          if (!P::feasible(nvars, nxt.pos)) continue;
          nxt.mask |= 1u << mk;
          nxt.dsum += M.codims[mk];
          nxt.assign[mk] = ei;
          out.push_back(std::move(nxt));
          grow(i + 1, out.size() - 1);
        }
      };
      grow(0, base);
    }
    DP_STAT(g_assign_peak = std::max(g_assign_peak, long(out.size())));
    states = std::move(out);
  }

  // lift child states over bounded edge ei to states constraining the parent
  // position: (y, lambda) with lambda >= 0, markings on the edge with
  // 0 <= s <= lambda, then y = x - lambda u and lambda eliminated
  std::vector<State> cross_edge(std::vector<State> branch, int ei,
                                const IntVec& u) const {
    const int n = M.t.n;
    for (State& st : branch) P::begin_lambda(st.pos, n);
    assign_edge(branch, ei, n + 1, n + M.sub_b[ei]);
    std::vector<State> crossed;
    for (State& st : branch) {
      if (!M.dim_count_ok(st.dsum, ei)) continue;
      P::fold_lambda(st.pos, n, u);
      if (!P::eliminate_lambda(st.pos, n)) continue;
      P::reduce(n, st.pos);
      crossed.push_back(std::move(st));
    }
    return crossed;
  }

  bool try_merge(const State& a, const State& b, int cap,
                 std::vector<State>& out) const {
    DP_STAT(++g_merge_pairs);
    if (a.dsum + b.dsum > cap) return false;
    if (!M.dist_compatible(a.assign, b.assign)) return false;
    State m;
    m.pos = a.pos;
    P::append(m.pos, b.pos);
    if (!P::compress(M.t.n, m.pos)) return false;
    if (!P::feasible(M.t.n, m.pos)) return false;
    if (m.pos.size() > 24) P::reduce(M.t.n, m.pos);
    m.mask = a.mask | b.mask;
    m.dsum = a.dsum + b.dsum;
    m.assign = a.assign;
    for (int i = 0; i < M.l; ++i)
      if (b.assign[i] >= 0) m.assign[i] = b.assign[i];
    out.push_back(std::move(m));
    return true;
  }

  // states constraining h(v), processing the subtree away from parent_edge
  std::vector<State> vertex_states(int v, int parent_edge) const {
    const int n = M.t.n;
    std::vector<State> states(1);
    states[0].assign.assign(M.l, -1);
    int cap = n;  // conditions so far only constrain the n position coordinates
    for (int ei : M.inc[v]) {
      if (ei == parent_edge) continue;
      const TypeEdge& e = M.t.edges[ei];
      if (e.bounded()) continue;
      assign_edge(states, ei, n, cap);
    }
    std::vector<std::vector<State>> branches;
    std::vector<int> branch_b;
    for (int ei : M.inc[v]) {
      if (ei == parent_edge) continue;
      const TypeEdge& e = M.t.edges[ei];
      if (!e.bounded()) continue;
      int c = (e.v0 == v) ? e.v1 : e.v0;
      IntVec u = (e.v0 == c) ? e.dir : neg(e.dir);  // direction from c to v
      branches.push_back(cross_edge(vertex_states(c, ei), ei, u));
      branch_b.push_back(M.sub_b[ei]);
    }
    // merge small branches first; at the root the last merge only needs
    // exact-complement masks, so bucket by mask
    std::vector<size_t> order(branches.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return branches[x].size() < branches[y].size();
    });
    for (size_t oi = 0; oi < order.size(); ++oi) {
      size_t k = order[oi];
      cap += branch_b[k];
      bool last = parent_edge < 0 && oi + 1 == order.size();
      std::vector<State> merged;
      if (last) {
        std::map<unsigned, std::vector<const State*>> by_mask;
        for (const State& b : branches[k]) by_mask[b.mask].push_back(&b);
        for (const State& a : states) {
          auto it = by_mask.find(M.full_mask & ~a.mask);
          if (it == by_mask.end()) continue;
          for (const State* b : it->second) try_merge(a, *b, cap, merged);
        }
      } else {
        for (const State& a : states)
          for (const State& b : branches[k]) {
            if (a.mask & b.mask) continue;
            try_merge(a, b, cap, merged);
          }
      }
      states = std::move(merged);
      DP_STAT(g_peak = std::max(g_peak, long(states.size())));
    }
    return states;
  }

  // complete marking assignments with a feasible relaxed position polyhedron
  std::vector<std::vector<int>> candidates() const {
    std::vector<std::vector<int>> out;
    std::vector<State> states = vertex_states(0, -1);
    for (State& st : states)
      if (st.mask == M.full_mask) out.push_back(std::move(st.assign));
    return out;
  }
};

std::vector<std::vector<int>> type_candidates(const TypeMatcher& m) {
  try {
    return DPRun<FastPolicy>(m).candidates();
  } catch (const FastOverflow&) {
    DP_STAT(++g_fallbacks);
    return DPRun<ExactPolicy>(m).candidates();
  }
}

}  // namespace

CountResult count_tropical(const Degree& d, const std::vector<AffineConstraint>& A,
                           const CountOptions& opts) {
  {
    DegreeValidation v = validate_degree(d);
    if (!v.ok) throw std::runtime_error("invalid degree: " + v.reason);
    ConstraintValidation c = validate_constraints(d, A);
    if (!c.ok) throw std::runtime_error("invalid constraints: " + c.detail);
  }
  const int l = int(A.size());
  assert(l <= 31);
  std::vector<TropicalType> types = enumerate_types(d);

  std::vector<AffineConstraint> cur = A;
  for (int attempt = 0;; ++attempt) {
    struct TypeOutcome {
      std::vector<CurveRecord> records;
      bool degenerate = false;
      std::vector<std::string> warnings;
    };
    std::vector<TypeOutcome> outcomes(types.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t ti = next.fetch_add(1);
        if (ti >= types.size()) return;
        const TropicalType& t = types[ti];
        TypeOutcome& out = outcomes[ti];
        TypeMatcher m{t, cur, opts, l, l == 31 ? 0x7fffffffu : (1u << l) - 1,
                      {}, {}, {}};
        m.init();
        for (const auto& marks : type_candidates(m)) {
          TropicalType mt = t;
          mt.marks = marks;
          MatchResult r = match_type(mt, cur);
          if (r.kind == MatchResult::Degenerate) {
            // Singular-but-consistent family: multiplicity 0, so it adds
            // nothing; under warnings-only it is recorded and skipped instead
            // of forcing a resample.
            if (opts.audit_warnings_only)
              out.warnings.push_back("degenerate family: " + canonical_code(mt));
            else
              out.degenerate = true;
            continue;
          }
          if (r.kind != MatchResult::Matched) continue;
          GenericityReport rep = genericity_audit(r.solution, cur);
          if (!rep.clean()) {
            if (opts.audit_warnings_only) {
              for (auto& viol : rep.violations)
                out.warnings.push_back("audit: " + std::to_string(viol.kind) +
                                       " at " + viol.witness);
            } else {
              out.degenerate = true;
              continue;
            }
          }
          // a marking that lands exactly on a vertex belongs to the wall
          // stratum shared by every incident edge's marked type; re-anchor it
          // to the smallest incident edge so the curve is recorded once
          for (int i = 0; i < l; ++i) {
            const TypeEdge& e = mt.edges[mt.marks[i]];
            int v = -1;
            if (r.solution.t_params[i] == 0)
              v = lower_end(e);
            else if (e.bounded() &&
                     r.solution.t_params[i] == r.solution.edge_lengths[mt.marks[i]])
              v = e.v0 + e.v1 - lower_end(e);
            if (v < 0) continue;
            for (size_t ei = 0; ei < mt.edges.size(); ++ei) {
              const TypeEdge& e2 = mt.edges[ei];
              if (e2.v0 != v && !(e2.bounded() && e2.v1 == v)) continue;
              mt.marks[i] = int(ei);
              r.solution.t_params[i] =
                  lower_end(e2) == v ? Rat(0) : r.solution.edge_lengths[int(ei)];
              break;
            }
          }
          r.solution.type = mt;
          CurveRecord rec;
          rec.type = mt;
          rec.solution = r.solution;
          rec.mult = multiplicity_record(mt, cur);
          rec.code = canonical_code(mt);
          out.records.push_back(std::move(rec));
        }
      }
    };
    int nthreads = std::max(1, opts.threads);
    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    bool degenerate = false;
    for (auto& o : outcomes) degenerate |= o.degenerate;
    if (degenerate) {
      if (!opts.allow_resample || attempt >= opts.max_retries)
        throw NonGenericConstraints(
            "constraints are not general for this degree (after " +
            std::to_string(attempt) + " resamples)");
      cur = random_generic_translation(A, opts.seed + attempt + 1,
                                       opts.box > 0 ? opts.box : 50);
      continue;
    }

    CountResult res;
    res.total = 0;
    res.constraints_used = cur;
    res.resamples = attempt;
    std::set<std::string> seen;
    for (auto& o : outcomes) {
      for (auto& w : o.warnings) res.warnings.push_back(w);
      for (auto& rec : o.records)
        if (seen.insert(rec.code).second) res.curves.push_back(std::move(rec));
    }
    std::sort(res.curves.begin(), res.curves.end(),
              [](const CurveRecord& a, const CurveRecord& b) { return a.code < b.code; });
    for (auto& rec : res.curves) res.total += rec.mult.contribution;
    return res;
  }
}

}  // namespace tropic
