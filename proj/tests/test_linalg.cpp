#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tropic/linalg.hpp"

using namespace tropic;

namespace {

IntMat make(int r, int c, std::initializer_list<long> vals) {
  IntMat m(r, c);
  auto it = vals.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Int(*it++);
  return m;
}

IntMat mul(const IntMat& A, const IntMat& B) {
  IntMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k)
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
  return C;
}

RatMat to_rat_mat(const IntMat& M) {
  RatMat R(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) R.at(i, j) = Rat(M.at(i, j));
  return R;
}

Int abs_det(const IntMat& M) {
  Rat d = determinant(to_rat_mat(M));
  REQUIRE(d.get_den() == 1);
  return abs(Int(d.get_num()));
}

void check_snf(const IntMat& M) {
  SmithDecomposition s = smith_normal_form(M);
  CHECK(mul(mul(s.U, M), s.V) == s.D);
  CHECK(abs_det(s.U) == 1);
  CHECK(abs_det(s.V) == 1);
  CHECK(mul(s.V, s.Vinv) == IntMat::identity(M.cols));
  for (int i = 0; i < s.rank; ++i) {
    CHECK(s.D.at(i, i) > 0);
    if (i + 1 < s.rank) CHECK(s.D.at(i + 1, i + 1) % s.D.at(i, i) == 0);
  }
  for (int i = 0; i < s.D.rows; ++i)
    for (int j = 0; j < s.D.cols; ++j)
      if (i != j || i >= s.rank) CHECK(s.D.at(i, j) == 0);
  CHECK(s.rank == rank(to_rat_mat(M)));
}

// Independent oracle for cokernel_order on square nonsingular M: breadth-first
// coset enumeration of Z^n modulo the column span, with membership decided by
// integrality of M^{-1} x. Uses no SNF machinery.
Int coset_count(const IntMat& M) {
  const int n = M.rows;
  RatMat A = to_rat_mat(M);
  auto in_lattice = [&](const IntVec& x) {
    RatVec b(n);
    for (int i = 0; i < n; ++i) b[i] = Rat(x[i]);
    LinSolve s = solve_rational(A, b);
    REQUIRE(s.kind == LinSolve::Unique);
    for (const Rat& q : s.x)
      if (q.get_den() != 1) return false;
    return true;
  };
  std::vector<IntVec> reps{IntVec(n, Int(0))};
  std::vector<IntVec> frontier = reps;
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const IntVec& v : frontier) {
      for (int i = 0; i < n; ++i)
        for (int d : {1, -1}) {
          IntVec w = v;
          w[i] += d;
          bool seen = false;
          for (const IntVec& r : reps) {
            IntVec diff(n);
            for (int j = 0; j < n; ++j) diff[j] = w[j] - r[j];
            if (in_lattice(diff)) {
              seen = true;
              break;
            }
          }
          if (!seen) {
            reps.push_back(w);
            next.push_back(w);
          }
        }
    }
    frontier = std::move(next);
  }
  return Int(int(reps.size()));
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  SmithDecomposition s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
  CHECK(s.rank == 2);
  CHECK(s.D.at(0, 0) == 1);
  CHECK(s.D.at(1, 1) == 6);

  s = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
  CHECK(s.rank == 2);
  CHECK(s.D.at(0, 0) == 2);
  CHECK(s.D.at(1, 1) == 4);

  s = smith_normal_form(IntMat(3, 3));
  CHECK(s.rank == 0);

  s = smith_normal_form(make(2, 3, {1, 2, 3, 4, 5, 6}));
  CHECK(s.rank == 2);
  CHECK(s.D.at(0, 0) == 1);
  CHECK(s.D.at(1, 1) == 3);
}

TEST_CASE("smith normal form randomized properties") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 500; ++trial) {
    int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
    IntMat M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M.at(i, j) = Int(long(rng() % 21) - 10);
    check_snf(M);
  }
}

TEST_CASE("cokernel order matches coset enumeration") {
  std::mt19937_64 rng(99173);
  int done = 0;
  while (done < 200) {
    int n = 1 + int(rng() % 3);
    IntMat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M.at(i, j) = Int(long(rng() % 9) - 4);
    Int d = abs_det(M);
    if (d == 0 || d > 24) continue;
    std::optional<Int> order = cokernel_order(M);
    REQUIRE(order.has_value());
    CHECK(*order == d);
    CHECK(*order == coset_count(M));
    ++done;
  }
}

TEST_CASE("cokernel order of rank-deficient map is infinite") {
  CHECK(!cokernel_order(make(2, 2, {1, 2, 2, 4})).has_value());
  CHECK(!cokernel_order(make(3, 2, {1, 0, 0, 1, 1, 1})).has_value());
  CHECK(cokernel_order(make(2, 3, {1, 0, 0, 0, 2, 0})) == Int(2));
}

TEST_CASE("saturation") {
  // span{(-1,-4,1),(1,0,1)} meets Z^3 in a lattice of index 2
  // over the generators.
  std::vector<IntVec> gens = {{-1, -4, 1}, {1, 0, 1}};
  LatticeBasis sat = saturate(gens, 3);
  REQUIRE(sat.vectors.size() == 2);
  LatticeBasis sub{3, gens};
  CHECK(lattice_index(sub, sat) == 2);

  SUBCASE("idempotent") {
    LatticeBasis again = saturate(sat.vectors, 3);
    CHECK(lattice_index(sat, again) == 1);
    CHECK(lattice_index(again, sat) == 1);
  }

  SUBCASE("already saturated input") {
    LatticeBasis s2 = saturate({{1, 0, 0}, {0, 1, 0}}, 3);
    LatticeBasis b2{3, {{1, 0, 0}, {0, 1, 0}}};
    CHECK(lattice_index(b2, s2) == 1);
  }

  SUBCASE("randomized: saturation contains generators with finite index") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
      int n = 2 + int(rng() % 3);
      int k = 1 + int(rng() % n);
      std::vector<IntVec> g(k, IntVec(n));
      for (auto& v : g)
        for (Int& x : v) x = Int(long(rng() % 11) - 5);
      RatMat G(k, n);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) G.at(i, j) = Rat(g[i][j]);
      if (rank(G) < k) continue;  // want independent generators
      LatticeBasis sat2 = saturate(g, n);
      REQUIRE(int(sat2.vectors.size()) == k);
      Int idx = lattice_index(LatticeBasis{n, g}, sat2);
      CHECK(idx >= 1);
      // index 1 iff generators were already saturated; either way the
      // saturation of the saturation is itself.
      LatticeBasis sat3 = saturate(sat2.vectors, n);
      CHECK(lattice_index(sat2, sat3) == 1);
    }
  }
}

TEST_CASE("lattice_index rejects non-sublattices") {
  LatticeBasis sup{2, {{1, 0}, {0, 2}}};
  LatticeBasis sub{2, {{1, 1}, {0, 2}}};  // (1,1) not in sup
  CHECK_THROWS_AS(lattice_index(sub, sup), NotSublattice);
  LatticeBasis mismatched{2, {{1, 0}}};
  CHECK_THROWS_AS(lattice_index(mismatched, sup), NotSublattice);
}

TEST_CASE("rational solver classification") {
  RatMat A(2, 2);
  A.at(0, 0) = 1;
  A.at(0, 1) = 2;
  A.at(1, 0) = 3;
  A.at(1, 1) = 4;
  LinSolve s = solve_rational(A, {Rat(5), Rat(6)});
  REQUIRE(s.kind == LinSolve::Unique);
  CHECK(s.x[0] == Rat(-4));
  CHECK(s.x[1] == Rat(9, 2));

  RatMat B(2, 2);
  B.at(0, 0) = 1;
  B.at(0, 1) = 2;
  B.at(1, 0) = 2;
  B.at(1, 1) = 4;
  CHECK(solve_rational(B, {Rat(1), Rat(3)}).kind == LinSolve::None);
  CHECK(solve_rational(B, {Rat(1), Rat(2)}).kind == LinSolve::Underdetermined);
}

TEST_CASE("nullspace and determinant") {
  RatMat B(2, 2);
  B.at(0, 0) = 1;
  B.at(0, 1) = 2;
  B.at(1, 0) = 2;
  B.at(1, 1) = 4;
  auto ns = nullspace(B);
  REQUIRE(ns.size() == 1);
  CHECK(B.at(0, 0) * ns[0][0] + B.at(0, 1) * ns[0][1] == 0);
  CHECK(determinant(B) == 0);

  RatMat C(3, 3);
  long vals[9] = {2, 0, 1, 0, 3, 0, 1, 0, 1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) C.at(i, j) = Rat(vals[3 * i + j]);
  CHECK(determinant(C) == Rat(3));
  CHECK(nullspace(C).empty());
  CHECK(rank(C) == 3);
}
