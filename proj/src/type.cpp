#include "tropic/type.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>

namespace tropic {

Degree TropicalType::degree() const {
  Degree d;
  d.n = n;
  for (auto& e : edges) {
    if (e.bounded()) continue;
    IntVec v(n);
    for (int j = 0; j < n; ++j) v[j] = e.weight * e.dir[j];
    ++d.rays[v];
  }
  return d;
}

IntVec TropicalType::outgoing(int v, const TypeEdge& e) const {
  IntVec out(n);
  int sign = (v == e.v0) ? 1 : -1;
  assert(v == e.v0 || v == e.v1);
  for (int j = 0; j < n; ++j) out[j] = sign * e.weight * e.dir[j];
  return out;
}

namespace {

std::vector<std::vector<int>> incidence(const TropicalType& t) {
  std::vector<std::vector<int>> inc(t.num_vertices);
  for (size_t i = 0; i < t.edges.size(); ++i) {
    inc[t.edges[i].v0].push_back(int(i));
    if (t.edges[i].bounded()) inc[t.edges[i].v1].push_back(int(i));
  }
  return inc;
}

}  // namespace

std::optional<std::string> check_type(const TropicalType& t) {
  if (t.n <= 0 || t.num_vertices <= 0) return "empty type";
  if (t.bounded_count() != t.num_vertices - 1) return "not a tree";
  auto inc = incidence(t);
  for (size_t i = 0; i < t.edges.size(); ++i) {
    auto& e = t.edges[i];
    if (e.v0 < 0 || e.v0 >= t.num_vertices || e.v1 >= t.num_vertices)
      return "bad endpoint";
    if (e.weight <= 0) return "nonpositive weight";
    if (int(e.dir.size()) != t.n || is_zero(e.dir)) return "bad direction";
    if (content(e.dir) != 1) return "non-primitive direction";
  }
  for (int v = 0; v < t.num_vertices; ++v) {
    if (inc[v].size() != 3) return "vertex " + std::to_string(v) + " not trivalent";
    IntVec s(t.n, Int(0));
    for (int ei : inc[v]) s = add(s, t.outgoing(v, t.edges[ei]));
    if (!is_zero(s)) return "balancing fails at vertex " + std::to_string(v);
  }
  // connectivity over bounded edges
  std::vector<bool> seen(t.num_vertices, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int ei : inc[v]) {
      auto& e = t.edges[ei];
      if (!e.bounded()) continue;
      int w = (e.v0 == v) ? e.v1 : e.v0;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (bool b : seen)
    if (!b) return "disconnected";
  for (int m : t.marks)
    if (m < 0 || m >= int(t.edges.size())) return "marking out of range";
  return std::nullopt;
}

namespace {

std::string marks_token(const TropicalType& t, int edge_index) {
  std::string s;
  for (size_t i = 0; i < t.marks.size(); ++i)
    if (t.marks[i] == edge_index) s += "m" + std::to_string(i);
  return s;
}

std::string rooted_code(const TropicalType& t,
                        const std::vector<std::vector<int>>& inc, int v,
                        int from_edge) {
  std::vector<std::string> parts;
  for (int ei : inc[v]) {
    if (ei == from_edge) continue;
    auto& e = t.edges[ei];
    IntVec dir = (v == e.v0) ? e.dir : neg(e.dir);
    std::string tok = e.weight.get_str() + "*" + format_vec(dir) +
                      marks_token(t, ei);
    if (e.bounded()) {
      int child = (e.v0 == v) ? e.v1 : e.v0;
      parts.push_back("B" + tok + "{" + rooted_code(t, inc, child, ei) + "}");
    } else {
      parts.push_back("U" + tok);
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "[";
  for (auto& p : parts) s += p;
  return s + "]";
}

}  // namespace

std::string canonical_code(const TropicalType& t) {
  auto inc = incidence(t);
  std::string best;
  for (int v = 0; v < t.num_vertices; ++v) {
    std::string c = rooted_code(t, inc, v, -1);
    if (best.empty() || c < best) best = c;
  }
  return "n" + std::to_string(t.n) + "l" + std::to_string(t.marks.size()) +
         best;
}

std::vector<LabeledTree> enumerate_leaf_trees(int e) {
  if (e < 3) throw TooFewLeaves();
  LabeledTree base;
  base.num_leaves = e;
  base.num_vertices = e + 1;  // internal ids start at e
  base.edges = {{0, e}, {1, e}, {2, e}};
  std::vector<LabeledTree> trees{base};
  for (int leaf = 3; leaf < e; ++leaf) {
    std::vector<LabeledTree> next;
    for (const LabeledTree& t : trees) {
      // only edges present before this round may be subdivided; at this stage
      // the tree on leaves 0..leaf-1 has exactly 2*leaf - 3 of them
      for (size_t i = 0; i < t.edges.size(); ++i) {
        LabeledTree s = t;
        int mid = s.num_vertices++;
        auto [a, b] = s.edges[i];
        s.edges[i] = {a, mid};
        s.edges.push_back({mid, b});
        s.edges.push_back({leaf, mid});
        next.push_back(std::move(s));
      }
    }
    trees = std::move(next);
  }
  return trees;
}

std::optional<TropicalType> derive_type(const LabeledTree& tree,
                                        const std::vector<IntVec>& leaf_vectors) {
  assert(int(leaf_vectors.size()) == tree.num_leaves);
  const int n = int(leaf_vectors[0].size());
  const int e = tree.num_leaves;
  std::vector<std::vector<std::pair<int, int>>> adj(tree.num_vertices);
  for (size_t i = 0; i < tree.edges.size(); ++i) {
    adj[tree.edges[i].first].push_back({tree.edges[i].second, int(i)});
    adj[tree.edges[i].second].push_back({tree.edges[i].first, int(i)});
  }
  // sum of leaf vectors strictly beyond vertex v, entered along from_edge
  std::function<IntVec(int, int)> sum_beyond = [&](int v, int from_edge) {
    if (v < e) return leaf_vectors[v];
    IntVec s(n, Int(0));
    for (auto [w, ei] : adj[v]) {
      if (ei == from_edge) continue;
      s = add(s, sum_beyond(w, ei));
    }
    return s;
  };

  TropicalType t;
  t.n = n;
  t.num_vertices = tree.num_vertices - e;
  auto internal_id = [&](int v) { return v - e; };
  for (size_t i = 0; i < tree.edges.size(); ++i) {
    auto [a, b] = tree.edges[i];
    TypeEdge te;
    if (a < e || b < e) {  // unbounded
      int leaf = (a < e) ? a : b;
      int v = (a < e) ? b : a;
      te.v0 = internal_id(v);
      auto [u, c] = primitive_part(leaf_vectors[leaf]);
      te.dir = u;
      te.weight = c;
    } else {
      IntVec m = sum_beyond(b, int(i));
      if (is_zero(m)) return std::nullopt;  // contracted edge
      te.v0 = internal_id(a);
      te.v1 = internal_id(b);
      auto [u, c] = primitive_part(m);
      te.dir = u;
      te.weight = c;
    }
    t.edges.push_back(std::move(te));
  }
  assert(!check_type(t).has_value());
  return t;
}

namespace {

// Rooted enumeration over sub-multisets of the degree, memoized.
struct RTree {
  IntVec up;                // sum of subtree leaf vectors = w*u of the up-edge
  std::vector<RTree> kids;  // empty: leaf; else exactly two
  std::string code;
};

using Multiset = std::vector<int>;  // counts parallel to the distinct vectors

struct RootedEnum {
  std::vector<IntVec> distinct;
  int n;
  std::map<Multiset, std::vector<RTree>> memo;

  IntVec msum(const Multiset& s) const {
    IntVec v(n, Int(0));
    for (size_t i = 0; i < s.size(); ++i)
      for (int j = 0; j < n; ++j) v[j] += s[i] * distinct[i][j];
    return v;
  }
  int msize(const Multiset& s) const {
    int t = 0;
    for (int c : s) t += c;
    return t;
  }

  // proper nonempty sub-multisets
  void each_submultiset(const Multiset& s, const std::function<void(const Multiset&)>& f) {
    Multiset cur(s.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == s.size()) {
        if (msize(cur) > 0 && cur != s) f(cur);
        return;
      }
      for (int c = 0; c <= s[i]; ++c) {
        cur[i] = c;
        rec(i + 1);
      }
      cur[i] = 0;
    };
    rec(0);
  }

  const std::vector<RTree>& rooted(const Multiset& s) {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    std::vector<RTree> out;
    std::set<std::string> seen;
    if (msize(s) == 1) {
      RTree t;
      t.up = msum(s);
      t.code = "L" + format_vec(t.up);
      out.push_back(std::move(t));
    } else {
      IntVec total = msum(s);
      each_submultiset(s, [&](const Multiset& s1) {
        Multiset s2(s.size());
        for (size_t i = 0; i < s.size(); ++i) s2[i] = s[i] - s1[i];
        // the two down-edges carry sums msum(s1), msum(s2); a zero sum on a
        // multi-leaf side would be a contracted bounded edge
        if (msize(s1) > 1 && is_zero(msum(s1))) return;
        if (msize(s2) > 1 && is_zero(msum(s2))) return;
        for (const RTree& a : rooted(s1))
          for (const RTree& b : rooted(s2)) {
            RTree t;
            t.up = total;
            t.kids = {a, b};
            std::string ca = a.code, cb = b.code;
            if (cb < ca) std::swap(ca, cb);
            t.code = "N" + format_vec(total) + "(" + ca + cb + ")";
            if (seen.insert(t.code).second) out.push_back(std::move(t));
          }
      });
    }
    return memo.emplace(s, std::move(out)).first->second;
  }
};

// Materialize a type from three rooted subtrees joined at a vertex.
TropicalType assemble(int n, const RTree& a, const RTree& b, const RTree& c) {
  TropicalType t;
  t.n = n;
  t.num_vertices = 1;
  std::function<void(const RTree&, int)> attach = [&](const RTree& r, int at) {
    auto [u, w] = primitive_part(r.up);
    TypeEdge e;
    e.dir = u;
    e.weight = w;
    if (r.kids.empty()) {
      e.v0 = at;
      t.edges.push_back(std::move(e));
      return;
    }
    int v = t.num_vertices++;
    // flag at the child vertex points up-tree, so base the edge there with
    // direction -u (outgoing toward `at` is the complement sum = -r.up)
    e.v0 = v;
    e.v1 = at;
    e.dir = neg(u);
    t.edges.push_back(std::move(e));
    attach(r.kids[0], v);
    attach(r.kids[1], v);
  };
  attach(a, 0);
  attach(b, 0);
  attach(c, 0);
  return t;
}

}  // namespace

std::vector<TropicalType> enumerate_types(const Degree& d) {
  DegreeValidation val = validate_degree(d);
  if (!val.ok) throw std::runtime_error("enumerate_types: " + val.reason);
  RootedEnum re;
  re.n = d.n;
  Multiset full;
  for (auto& [v, c] : d.rays) {
    re.distinct.push_back(v);
    full.push_back(c);
  }
  std::vector<TropicalType> out;
  std::set<std::string> seen;
  if (re.msize(full) < 3) return out;
  // split the degree at one chosen vertex into three parts; duplicates from
  // different vertex choices are removed by the canonical code
  re.each_submultiset(full, [&](const Multiset& s1) {
    Multiset rest(full.size());
    for (size_t i = 0; i < full.size(); ++i) rest[i] = full[i] - s1[i];
    if (re.msize(s1) > 1 && is_zero(re.msum(s1))) return;
    Multiset s1c = s1;  // capture by value for inner lambda
    re.each_submultiset(rest, [&](const Multiset& s2) {
      Multiset s3(full.size());
      for (size_t i = 0; i < full.size(); ++i) s3[i] = rest[i] - s2[i];
      if (re.msize(s3) == 0) return;
      if (re.msize(s2) > 1 && is_zero(re.msum(s2))) return;
      if (re.msize(s3) > 1 && is_zero(re.msum(s3))) return;
      for (const RTree& a : re.rooted(s1c))
        for (const RTree& b : re.rooted(s2))
          for (const RTree& c : re.rooted(s3)) {
            TropicalType t = assemble(d.n, a, b, c);
            std::string code = canonical_code(t);
            if (seen.insert(code).second) {
              assert(!check_type(t).has_value());
              out.push_back(std::move(t));
            }
          }
    });
  });
  return out;
}

std::vector<std::vector<int>> edge_distances(const TropicalType& t) {
  const int V = t.num_vertices;
  // vertex-to-vertex distances over bounded edges
  std::vector<std::vector<int>> vd(V, std::vector<int>(V, V + 1));
  for (int v = 0; v < V; ++v) vd[v][v] = 0;
  for (auto& e : t.edges)
    if (e.bounded()) vd[e.v0][e.v1] = vd[e.v1][e.v0] = 1;
  for (int k = 0; k < V; ++k)
    for (int i = 0; i < V; ++i)
      for (int j = 0; j < V; ++j)
        vd[i][j] = std::min(vd[i][j], vd[i][k] + vd[k][j]);
  const int m = int(t.edges.size());
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, 0));
  auto ends = [&](const TypeEdge& e) {
    std::vector<int> v{e.v0};
    if (e.bounded()) v.push_back(e.v1);
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int best = V + 1;
      for (int a : ends(t.edges[i]))
        for (int b : ends(t.edges[j])) best = std::min(best, vd[a][b]);
      dist[i][j] = dist[j][i] = best;
    }
  return dist;
}

std::vector<TropicalType> enumerate_marked_types(const Degree& d, int l,
                                                 const std::vector<int>& codims) {
  std::vector<TropicalType> types = enumerate_types(d);
  if (l == 0) return types;
  assert(int(codims.size()) == l);
  int sum = 0;
  for (int c : codims) sum += c;
  if (sum != d.e() + d.n - 3) throw CodimensionMismatch();
  std::vector<TropicalType> out;
  std::set<std::string> seen;
  for (const TropicalType& t : types) {
    auto dist = edge_distances(t);
    const int m = int(t.edges.size());
    std::vector<int> marks(l);
    std::function<void(int)> rec = [&](int i) {
      if (i == l) {
        TropicalType mt = t;
        mt.marks = marks;
        std::string code = canonical_code(mt);
        if (seen.insert(code).second) out.push_back(std::move(mt));
        return;
      }
      for (int ei = 0; ei < m; ++ei) {
        bool ok = true;
        for (int j = 0; j < i && ok; ++j)
          if (dist[marks[j]][ei] < codims[j] + codims[i] - d.n) ok = false;
        if (!ok) continue;
        marks[i] = ei;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace tropic
