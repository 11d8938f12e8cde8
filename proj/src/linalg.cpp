#include "tropic/linalg.hpp"

#include <cassert>

namespace tropic {

namespace {

struct SnfWork {
  IntMat M, U, V, Vinv;

  void row_swap(int i, int j) {
    for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
    for (int c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void row_negate(int i) {
    for (int c = 0; c < M.cols; ++c) M.at(i, c) = -M.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
  }
  // R_j += k R_i
  void row_add(int j, const Int& k, int i) {
    for (int c = 0; c < M.cols; ++c) M.at(j, c) += k * M.at(i, c);
    for (int c = 0; c < U.cols; ++c) U.at(j, c) += k * U.at(i, c);
  }
  void col_swap(int i, int j) {
    for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
    for (int r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
    for (int c = 0; c < Vinv.cols; ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
  }
  void col_negate(int i) {
    for (int r = 0; r < M.rows; ++r) M.at(r, i) = -M.at(r, i);
    for (int r = 0; r < V.rows; ++r) V.at(r, i) = -V.at(r, i);
    for (int c = 0; c < Vinv.cols; ++c) Vinv.at(i, c) = -Vinv.at(i, c);
  }
  // C_j += k C_i  (so row i of Vinv loses k * row j)
  void col_add(int j, const Int& k, int i) {
    for (int r = 0; r < M.rows; ++r) M.at(r, j) += k * M.at(r, i);
    for (int r = 0; r < V.rows; ++r) V.at(r, j) += k * V.at(r, i);
    for (int c = 0; c < Vinv.cols; ++c) Vinv.at(i, c) -= k * Vinv.at(j, c);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& M0) {
  SnfWork w;
  w.M = M0;
  w.U = IntMat::identity(M0.rows);
  w.V = IntMat::identity(M0.cols);
  w.Vinv = IntMat::identity(M0.cols);

  int t = 0;
  const int lim = std::min(M0.rows, M0.cols);
  while (t < lim) {
    // least-absolute-value pivot in the trailing submatrix
    int pi = -1, pj = -1;
    for (int i = t; i < w.M.rows; ++i)
      for (int j = t; j < w.M.cols; ++j)
        if (w.M.at(i, j) != 0 &&
            (pi < 0 || abs(w.M.at(i, j)) < abs(w.M.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    if (w.M.at(t, t) < 0) w.row_negate(t);

    bool clean = true;
    for (int i = t + 1; i < w.M.rows; ++i) {
      if (w.M.at(i, t) == 0) continue;
      Int q = w.M.at(i, t) / w.M.at(t, t);  // truncated division
      w.row_add(i, -q, t);
      if (w.M.at(i, t) != 0) clean = false;
    }
    for (int j = t + 1; j < w.M.cols; ++j) {
      if (w.M.at(t, j) == 0) continue;
      Int q = w.M.at(t, j) / w.M.at(t, t);
      w.col_add(j, -q, t);
      if (w.M.at(t, j) != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; re-pick pivot

    // divisibility: pivot must divide the whole trailing submatrix
    bool divides = true;
    for (int i = t + 1; i < w.M.rows && divides; ++i)
      for (int j = t + 1; j < w.M.cols && divides; ++j)
        if (w.M.at(i, j) % w.M.at(t, t) != 0) {
          w.row_add(t, 1, i);
          divides = false;
        }
    if (!divides) continue;
    ++t;
  }

  SmithDecomposition s;
  s.D = w.M;
  s.U = w.U;
  s.V = w.V;
  s.Vinv = w.Vinv;
  s.rank = t;
  return s;
}

std::optional<Int> cokernel_order(const IntMat& M) {
  SmithDecomposition s = smith_normal_form(M);
  if (s.rank < M.rows) return std::nullopt;
  Int p = 1;
  for (int i = 0; i < s.rank; ++i) p *= s.D.at(i, i);
  return p;
}

LatticeBasis saturate(const std::vector<IntVec>& generators, int n) {
  LatticeBasis b;
  b.ambient = n;
  if (generators.empty()) return b;
  IntMat G(int(generators.size()), n);
  for (int i = 0; i < G.rows; ++i)
    for (int j = 0; j < n; ++j) G.at(i, j) = generators[i][j];
  SmithDecomposition s = smith_normal_form(G);
  // row lattice of G = rows of D * Vinv; its saturation drops the d_i factors.
  for (int i = 0; i < s.rank; ++i) {
    IntVec v(n);
    for (int j = 0; j < n; ++j) v[j] = s.Vinv.at(i, j);
    b.vectors.push_back(std::move(v));
  }
  return b;
}

Int lattice_index(const LatticeBasis& sub, const LatticeBasis& sup) {
  if (sub.ambient != sup.ambient || sub.vectors.size() != sup.vectors.size())
    throw NotSublattice();
  const int k = int(sup.vectors.size());
  if (k == 0) return 1;
  const int n = sup.ambient;
  // express each sub vector in the sup basis: sup^T x = v
  RatMat S(k, k);
  RatMat A(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) A.at(i, j) = Rat(sup.vectors[j][i]);
  for (int r = 0; r < k; ++r) {
    RatVec b(n);
    for (int i = 0; i < n; ++i) b[i] = Rat(sub.vectors[r][i]);
    LinSolve sol = solve_rational(A, b);
    if (sol.kind != LinSolve::Unique) throw NotSublattice();
    for (int j = 0; j < k; ++j) {
      if (sol.x[j].get_den() != 1) throw NotSublattice();
      S.at(r, j) = sol.x[j];
    }
  }
  Rat d = determinant(S);
  if (d == 0) throw NotSublattice();
  Int num = d.get_num();
  return abs(num);
}

std::vector<int> rref(RatMat& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int p = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(p, j), M.at(r, j));
    Rat inv = M.at(r, c);
    for (int j = 0; j < M.cols; ++j) M.at(r, j) /= inv;
    for (int i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      Rat f = M.at(i, c);
      for (int j = 0; j < M.cols; ++j) M.at(i, j) -= f * M.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(RatMat M) { return int(rref(M).size()); }

std::vector<RatVec> nullspace(const RatMat& A) {
  RatMat M = A;
  std::vector<int> pivots = rref(M);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int c = 0; c < A.cols; ++c) {
    if (is_pivot[c]) continue;
    RatVec v(A.cols, Rat(0));
    v[c] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M.at(int(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinSolve solve_rational(const RatMat& A, const RatVec& b) {
  assert(int(b.size()) == A.rows);
  RatMat M(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, A.cols) = b[i];
  }
  std::vector<int> pivots = rref(M);
  LinSolve s;
  if (!pivots.empty() && pivots.back() == A.cols) {
    s.kind = LinSolve::None;
    return s;
  }
  if (int(pivots.size()) < A.cols) {
    s.kind = LinSolve::Underdetermined;
    return s;
  }
  s.kind = LinSolve::Unique;
  s.x.assign(A.cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) s.x[pivots[r]] = M.at(int(r), A.cols);
  return s;
}

Rat determinant(RatMat M) {
  assert(M.rows == M.cols);
  Rat det = 1;
  for (int c = 0; c < M.cols; ++c) {
    int p = -1;
    for (int i = c; i < M.rows; ++i)
      if (M.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(p, j), M.at(c, j));
      det = -det;
    }
    det *= M.at(c, c);
    Rat inv = M.at(c, c);
    for (int i = c + 1; i < M.rows; ++i) {
      if (M.at(i, c) == 0) continue;
      Rat f = M.at(i, c) / inv;
      for (int j = c; j < M.cols; ++j) M.at(i, j) -= f * M.at(c, j);
    }
  }
  return det;
}

}  // namespace tropic
