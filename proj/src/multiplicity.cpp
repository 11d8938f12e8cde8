#include "tropic/multiplicity.hpp"

#include <cassert>

namespace tropic {

Int inner_weight(const TropicalType& t) {
  Int w = 1;
  for (auto& e : t.edges)
    if (e.bounded()) w *= e.weight;
  return w;
}

Int total_marked_weight(const TropicalType& t) {
  Int w = inner_weight(t);
  for (int m : t.marks) w *= t.edges[m].weight;
  return w;
}

IntMat lattice_map_matrix(const TropicalType& t,
                          const std::vector<AffineConstraint>& A) {
  const int n = t.n;
  const int V = t.num_vertices;
  const int l = int(t.marks.size());
  std::vector<int> bounded;
  for (size_t i = 0; i < t.edges.size(); ++i)
    if (t.edges[i].bounded()) bounded.push_back(int(i));
  const int nb = int(bounded.size());
  const int rows = n * (nb + l);

  // relation lattices per marking block: saturation of span{u_i} + L(A_i)
  std::vector<LatticeBasis> mark_rel(l);
  for (int i = 0; i < l; ++i) {
    std::vector<IntVec> gens{lower_dir(t.edges[t.marks[i]])};
    for (auto& d : A[i].directions) gens.push_back(d);
    mark_rel[i] = saturate(gens, n);
  }
  int rel_cols = nb;
  for (auto& b : mark_rel) rel_cols += int(b.vectors.size());

  IntMat M(rows, n * V + rel_cols);
  // vertex-basis columns: the image of e_j placed at vertex v
  for (int bi = 0; bi < nb; ++bi) {
    const TypeEdge& e = t.edges[bounded[bi]];
    int lo = lower_end(e), hi = e.v0 + e.v1 - lo;
    for (int j = 0; j < n; ++j) {
      M.at(n * bi + j, n * hi + j) += 1;
      M.at(n * bi + j, n * lo + j) -= 1;
    }
  }
  for (int i = 0; i < l; ++i) {
    int lo = lower_end(t.edges[t.marks[i]]);
    for (int j = 0; j < n; ++j) M.at(n * (nb + i) + j, n * lo + j) += 1;
  }
  // relation columns
  int col = n * V;
  for (int bi = 0; bi < nb; ++bi, ++col) {
    IntVec u = lower_dir(t.edges[bounded[bi]]);
    for (int j = 0; j < n; ++j) M.at(n * bi + j, col) = u[j];
  }
  for (int i = 0; i < l; ++i)
    for (auto& v : mark_rel[i].vectors) {
      for (int j = 0; j < n; ++j) M.at(n * (nb + i) + j, col) = v[j];
      ++col;
    }
  return M;
}

Int curve_index_D(const TropicalType& t, const std::vector<AffineConstraint>& A) {
  std::optional<Int> d = cokernel_order(lattice_map_matrix(t, A));
  if (!d) throw InfiniteIndex();
  return *d;
}

std::vector<Int> delta_indices(const TropicalType& t,
                               const std::vector<AffineConstraint>& A) {
  std::vector<Int> deltas;
  for (size_t i = 0; i < t.marks.size(); ++i) {
    std::vector<IntVec> gens{lower_dir(t.edges[t.marks[i]])};
    for (auto& d : A[i].directions) gens.push_back(d);
    LatticeBasis sub{t.n, gens};
    deltas.push_back(lattice_index(sub, saturate(gens, t.n)));
  }
  return deltas;
}

MultiplicityRecord multiplicity_record(const TropicalType& t,
                                       const std::vector<AffineConstraint>& A) {
  MultiplicityRecord r;
  r.marked_weight = total_marked_weight(t);
  r.D_index = curve_index_D(t, A);
  r.deltas = delta_indices(t, A);
  r.D_tilde = r.D_index;
  for (auto& d : r.deltas) r.D_tilde *= d;
  r.contribution = r.marked_weight * r.D_tilde;
  return r;
}

Int mikhalkin_vertex_mult(const TropicalType& t, int v) {
  if (t.n != 2) throw WrongDimension();
  std::vector<const TypeEdge*> inc;
  for (auto& e : t.edges)
    if (e.v0 == v || (e.bounded() && e.v1 == v)) inc.push_back(&e);
  assert(inc.size() == 3);
  auto pair_mult = [&](const TypeEdge& a, const TypeEdge& b) -> Int {
    IntVec ua = (a.v0 == v) ? a.dir : neg(a.dir);
    IntVec ub = (b.v0 == v) ? b.dir : neg(b.dir);
    Int det = ua[0] * ub[1] - ua[1] * ub[0];
    return a.weight * b.weight * abs(det);
  };
  Int m = pair_mult(*inc[0], *inc[1]);
  assert(m == pair_mult(*inc[0], *inc[2]));
  assert(m == pair_mult(*inc[1], *inc[2]));
  return m;
}

Equivalence2D check_2d_equivalence(const TropicalType& t,
                                   const std::vector<AffineConstraint>& A) {
  if (t.n != 2) throw WrongDimension();
  for (auto& c : A)
    if (!c.directions.empty())
      throw std::runtime_error("2-D equivalence needs point constraints");
  Equivalence2D r;
  r.lhs = total_marked_weight(t) * curve_index_D(t, A);
  r.rhs = 1;
  for (int v = 0; v < t.num_vertices; ++v) r.rhs *= mikhalkin_vertex_mult(t, v);
  r.equal = r.lhs == r.rhs;
  return r;
}

std::vector<Int> kontsevich_oracle(int dmax) {
  assert(dmax >= 1);
  auto binom = [](long n, long k) {
    Int r;
    if (k < 0 || k > n) return Int(0);
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
  };
  std::vector<Int> N(dmax + 1);
  N[1] = 1;
  for (long d = 2; d <= dmax; ++d) {
    Int total = 0;
    for (long da = 1; da < d; ++da) {
      long db = d - da;
      total += N[da] * N[db] * da * da * db *
               (db * binom(3 * d - 4, 3 * da - 2) -
                da * binom(3 * d - 4, 3 * da - 1));
    }
    N[d] = total;
  }
  return std::vector<Int>(N.begin() + 1, N.end());
}

}  // namespace tropic
