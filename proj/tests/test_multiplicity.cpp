#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropic/multiplicity.hpp"

using namespace tropic;

namespace {

Degree plane_degree(int d) {
  Degree deg;
  deg.n = 2;
  deg.rays[{Int(-1), Int(0)}] = d;
  deg.rays[{Int(0), Int(-1)}] = d;
  deg.rays[{Int(1), Int(1)}] = d;
  return deg;
}

AffineConstraint plane_point(long x, long y) {
  AffineConstraint c;
  c.n = 2;
  c.base = {Rat(x), Rat(y)};
  return c;
}

TropicalType tripod(std::vector<std::pair<IntVec, long>> ends) {
  TropicalType t;
  t.n = int(ends[0].first.size());
  t.num_vertices = 1;
  for (auto& [d, w] : ends) t.edges.push_back({0, -1, Int(w), d});
  REQUIRE(!check_type(t).has_value());
  return t;
}

TropicalType caterpillar_conic() {
  TropicalType t;
  t.n = 2;
  t.num_vertices = 4;
  auto U = [&](int v, long dx, long dy, long w = 1) {
    t.edges.push_back({v, -1, Int(w), {Int(dx), Int(dy)}});
  };
  auto B = [&](int v0, int v1, long dx, long dy, long w = 1) {
    t.edges.push_back({v0, v1, Int(w), {Int(dx), Int(dy)}});
  };
  U(0, -1, 0);
  U(0, 0, -1);
  B(0, 1, 1, 1);
  U(1, -1, 0);
  B(1, 2, 2, 1);
  U(2, 1, 1);
  B(2, 3, 1, 0);
  U(3, 0, -1);
  U(3, 1, 1);
  t.marks = {0, 1, 3, 5, 7};
  REQUIRE(!check_type(t).has_value());
  return t;
}

}  // namespace

TEST_CASE("weights") {
  TropicalType line = tripod({{{Int(-1), Int(0)}, 1},
                              {{Int(0), Int(-1)}, 1},
                              {{Int(1), Int(1)}, 1}});
  line.marks = {0, 1};
  CHECK(inner_weight(line) == 1);
  CHECK(total_marked_weight(line) == 1);

  TropicalType conic = caterpillar_conic();
  CHECK(inner_weight(conic) == 1);
  conic.edges[6].weight = 2;  // pretend: bounded edge of weight 2
  CHECK(inner_weight(conic) == 2);
  conic.marks = {6};
  CHECK(total_marked_weight(conic) == 4);
}

TEST_CASE("lattice map of the marked plane line") {
  TropicalType line = tripod({{{Int(-1), Int(0)}, 1},
                              {{Int(0), Int(-1)}, 1},
                              {{Int(1), Int(1)}, 1}});
  line.marks = {0, 1};
  std::vector<AffineConstraint> A = {plane_point(-2, 0), plane_point(0, -3)};
  IntMat M = lattice_map_matrix(line, A);
  CHECK(M.rows == 4);  // n(e-3) + n*l = 0 + 4
  CHECK(M.cols == 4);  // one vertex (2) + one relation per marking block
  CHECK(curve_index_D(line, A) == 1);
  auto deltas = delta_indices(line, A);
  REQUIRE(deltas.size() == 2);
  CHECK(deltas[0] == 1);
  CHECK(deltas[1] == 1);
  MultiplicityRecord r = multiplicity_record(line, A);
  CHECK(r.contribution == 1);

  // the matrix depends only on the type and the direction lattices
  auto B = A;
  B[0].base = {Rat(17, 3), Rat(-5)};
  B[1].base = {Rat(1, 7), Rat(2)};
  CHECK(lattice_map_matrix(line, B) == M);

  // unmarked single-vertex type: empty presentation, D = 1
  TropicalType bare = line;
  bare.marks.clear();
  IntMat E = lattice_map_matrix(bare, {});
  CHECK(E.rows == 0);
  CHECK(curve_index_D(bare, {}) == 1);
}

TEST_CASE("delta index of a skew line constraint") {
  // marked edge direction (-1,-4,1) against L(A) = Z(1,0,1): the sum lattice
  // has index 2 in its saturation
  TropicalType t = tripod({{{Int(-1), Int(-4), Int(1)}, 1},
                           {{Int(1), Int(0), Int(1)}, 1},
                           {{Int(0), Int(2), Int(-1)}, 2}});
  t.marks = {0};
  AffineConstraint c;
  c.n = 3;
  c.base = {Rat(0), Rat(0), Rat(0)};
  c.directions = {{Int(1), Int(0), Int(1)}};
  auto deltas = delta_indices(t, {c});
  REQUIRE(deltas.size() == 1);
  CHECK(deltas[0] == 2);
}

TEST_CASE("Mikhalkin vertex multiplicities") {
  TropicalType a = tripod({{{Int(1), Int(0)}, 1},
                           {{Int(0), Int(1)}, 1},
                           {{Int(-1), Int(-1)}, 1}});
  CHECK(mikhalkin_vertex_mult(a, 0) == 1);

  TropicalType b = tripod({{{Int(1), Int(0)}, 2},
                           {{Int(0), Int(1)}, 2},
                           {{Int(-1), Int(-1)}, 2}});
  CHECK(mikhalkin_vertex_mult(b, 0) == 4);

  TropicalType c = tripod({{{Int(1), Int(1)}, 1},
                           {{Int(1), Int(-1)}, 2},
                           {{Int(-3), Int(1)}, 1}});
  CHECK(mikhalkin_vertex_mult(c, 0) == 4);

  TropicalType d3 = tripod({{{Int(1), Int(0), Int(0)}, 1},
                            {{Int(0), Int(1), Int(0)}, 1},
                            {{Int(-1), Int(-1), Int(0)}, 1}});
  CHECK_THROWS_AS(mikhalkin_vertex_mult(d3, 0), WrongDimension);
}

TEST_CASE("2-D equivalence") {
  TropicalType line = tripod({{{Int(-1), Int(0)}, 1},
                              {{Int(0), Int(-1)}, 1},
                              {{Int(1), Int(1)}, 1}});
  line.marks = {0, 1};
  std::vector<AffineConstraint> A = {plane_point(-2, 0), plane_point(0, -3)};
  Equivalence2D e = check_2d_equivalence(line, A);
  CHECK(e.lhs == 1);
  CHECK(e.rhs == 1);
  CHECK(e.equal);

  TropicalType conic = caterpillar_conic();
  std::vector<AffineConstraint> P = {plane_point(-2, 0), plane_point(0, -3),
                                     plane_point(-1, 1), plane_point(4, 3),
                                     plane_point(5, 0)};
  MatchResult r = match_type(conic, P);
  REQUIRE(r.kind == MatchResult::Matched);
  Equivalence2D e2 = check_2d_equivalence(conic, P);
  CHECK(e2.equal);
  CHECK(e2.lhs == 1);  // all vertex multiplicities of this conic are 1
}

TEST_CASE("Kontsevich oracle") {
  auto N = kontsevich_oracle(5);
  REQUIRE(N.size() == 5);
  CHECK(N[0] == 1);
  CHECK(N[1] == 1);
  CHECK(N[2] == 12);
  CHECK(N[3] == 620);
  CHECK(N[4] == 87304);
}
