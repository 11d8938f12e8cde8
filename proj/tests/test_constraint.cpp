#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tropic/constraint.hpp"

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

// the unique plane degree-1 type, marked on the edges with the given directions
TropicalType line_marked(const IntVec& d1, const IntVec& d2) {
  TropicalType t = enumerate_types(plane_degree(1)).front();
  auto find = [&](const IntVec& d) {
    for (size_t i = 0; i < t.edges.size(); ++i)
      if (t.edges[i].dir == d) return int(i);
    REQUIRE(false);
    return -1;
  };
  t.marks = {find(d1), find(d2)};
  return t;
}

}  // namespace

TEST_CASE("constraint validation") {
  auto d1 = plane_degree(1);
  std::vector<AffineConstraint> two = {plane_point(-2, 0), plane_point(0, -3)};
  CHECK(validate_constraints(d1, two).ok);

  std::vector<AffineConstraint> three = two;
  three.push_back(plane_point(1, 1));
  auto v = validate_constraints(d1, three);
  CHECK(!v.ok);
  CHECK(v.reason == ConstraintValidation::CodimensionSum);

  AffineConstraint bad;
  bad.n = 3;
  bad.base = {Rat(0), Rat(0), Rat(0)};
  auto v2 = validate_constraints(d1, {bad, bad});
  CHECK(v2.reason == ConstraintValidation::RankMismatch);

  AffineConstraint unsat;
  unsat.n = 3;
  unsat.base = {Rat(0), Rat(0), Rat(0)};
  unsat.directions = {{Int(2), Int(0), Int(0)}};
  Degree q;
  q.n = 3;
  q.rays[{Int(-1), Int(0), Int(0)}] = 1;
  q.rays[{Int(0), Int(-1), Int(0)}] = 1;
  q.rays[{Int(1), Int(1), Int(0)}] = 1;
  auto v3 = validate_constraints(q, {unsat, unsat, unsat});
  CHECK(v3.reason == ConstraintValidation::UnsaturatedBasis);
}

TEST_CASE("match_type on the plane line") {
  TropicalType t = line_marked({Int(-1), Int(0)}, {Int(0), Int(-1)});
  std::vector<AffineConstraint> A = {plane_point(-2, 0), plane_point(0, -3)};
  MatchResult r = match_type(t, A);
  REQUIRE(r.kind == MatchResult::Matched);
  CHECK(r.solution.vertex_positions[0] == RatVec{Rat(0), Rat(0)});
  CHECK(r.solution.t_params[0] == 2);
  CHECK(r.solution.t_params[1] == 3);
  CHECK(genericity_audit(r.solution, A).clean());

  // point on the wrong side of the vertex forces t < 0
  MatchResult bad = match_type(t, {plane_point(1, 1), plane_point(0, -3)});
  REQUIRE(bad.kind == MatchResult::NoSolution);
  CHECK(bad.reason == MatchResult::PositivityFail);
}

TEST_CASE("singular systems split by consistency") {
  // both markings on the same unbounded edge: singular for every translation
  TropicalType t = line_marked({Int(-1), Int(0)}, {Int(-1), Int(0)});
  // generic points: the two conditions are incompatible
  MatchResult r = match_type(t, {plane_point(-2, 0), plane_point(0, -3)});
  REQUIRE(r.kind == MatchResult::NoSolution);
  CHECK(r.reason == MatchResult::Inconsistent);
  // points on a common horizontal line: consistent but not unique
  MatchResult d = match_type(t, {plane_point(-2, 0), plane_point(-5, 0)});
  CHECK(d.kind == MatchResult::Degenerate);
}

TEST_CASE("audit flags vertex hits") {
  TropicalType t = line_marked({Int(-1), Int(0)}, {Int(0), Int(-1)});
  std::vector<AffineConstraint> A = {plane_point(-2, 0), plane_point(0, 0)};
  MatchResult r = match_type(t, A);
  REQUIRE(r.kind == MatchResult::Matched);  // t2 = 0 is still a solution
  GenericityReport rep = genericity_audit(r.solution, A);
  CHECK(!rep.clean());
  bool at_vertex = false, on_constraint = false;
  for (auto& v : rep.violations) {
    at_vertex |= v.kind == GenericityViolation::MarkedPointAtVertex;
    on_constraint |= v.kind == GenericityViolation::VertexOnConstraint;
  }
  CHECK(at_vertex);
  CHECK(on_constraint);
}

namespace {

// a hand-built plane conic: caterpillar V0..V3 with all weights 1, marked on
// its five unbounded ends; matching the listed points forces
// V0=(0,0), V1=(1,1), V2=(3,2), V3=(5,2)
TropicalType caterpillar_conic() {
  TropicalType t;
  t.n = 2;
  t.num_vertices = 4;
  auto U = [&](int v, long dx, long dy) {
    t.edges.push_back({v, -1, Int(1), {Int(dx), Int(dy)}});
  };
  auto B = [&](int v0, int v1, long dx, long dy) {
    t.edges.push_back({v0, v1, Int(1), {Int(dx), Int(dy)}});
  };
  U(0, -1, 0);    // 0, marked 0
  U(0, 0, -1);    // 1, marked 1
  B(0, 1, 1, 1);  // 2
  U(1, -1, 0);    // 3, marked 2
  B(1, 2, 2, 1);  // 4
  U(2, 1, 1);     // 5, marked 3
  B(2, 3, 1, 0);  // 6
  U(3, 0, -1);    // 7, marked 4
  U(3, 1, 1);     // 8
  t.marks = {0, 1, 3, 5, 7};
  REQUIRE(!check_type(t).has_value());
  return t;
}

std::vector<AffineConstraint> caterpillar_points() {
  return {plane_point(-2, 0), plane_point(0, -3), plane_point(-1, 1),
          plane_point(4, 3), plane_point(5, 0)};
}

}  // namespace

TEST_CASE("hand-built conic matches cleanly") {
  TropicalType t = caterpillar_conic();
  auto A = caterpillar_points();
  REQUIRE(validate_constraints(t.degree(), A).ok);
  MatchResult r = match_type(t, A);
  REQUIRE(r.kind == MatchResult::Matched);
  CHECK(r.solution.vertex_positions[0] == RatVec{Rat(0), Rat(0)});
  CHECK(r.solution.vertex_positions[1] == RatVec{Rat(1), Rat(1)});
  CHECK(r.solution.vertex_positions[2] == RatVec{Rat(3), Rat(2)});
  CHECK(r.solution.vertex_positions[3] == RatVec{Rat(5), Rat(2)});
  CHECK(r.solution.edge_lengths.at(2) == 1);
  CHECK(r.solution.edge_lengths.at(4) == 1);
  CHECK(r.solution.edge_lengths.at(6) == 2);
  GenericityReport rep = genericity_audit(r.solution, A);
  CHECK(rep.clean());
}

TEST_CASE("translation equivariance") {
  TropicalType t = caterpillar_conic();
  auto A = caterpillar_points();
  std::vector<AffineConstraint> B = A;
  for (auto& c : B) {
    c.base[0] += 11;
    c.base[1] += -4;
  }
  MatchResult ra = match_type(t, A);
  MatchResult rb = match_type(t, B);
  REQUIRE(ra.kind == MatchResult::Matched);
  REQUIRE(rb.kind == MatchResult::Matched);
  for (int v = 0; v < t.num_vertices; ++v) {
    CHECK(rb.solution.vertex_positions[v][0] == ra.solution.vertex_positions[v][0] + 11);
    CHECK(rb.solution.vertex_positions[v][1] == ra.solution.vertex_positions[v][1] - 4);
  }
  CHECK(ra.solution.edge_lengths == rb.solution.edge_lengths);
  CHECK(ra.solution.t_params == rb.solution.t_params);
  CHECK(ra.solution.s_params == rb.solution.s_params);
}

TEST_CASE("orientation independence") {
  // relabel the vertices; the orientation convention follows vertex ids, so
  // this flips every bounded edge, and the solution must be unchanged
  TropicalType t = caterpillar_conic();
  auto A = caterpillar_points();
  MatchResult ra = match_type(t, A);
  REQUIRE(ra.kind == MatchResult::Matched);
  TropicalType rev = t;
  auto perm = [&](int v) { return t.num_vertices - 1 - v; };
  for (auto& e : rev.edges) {
    e.v0 = perm(e.v0);
    if (e.bounded()) e.v1 = perm(e.v1);
  }
  MatchResult rb = match_type(rev, A);
  REQUIRE(rb.kind == MatchResult::Matched);
  for (int v = 0; v < t.num_vertices; ++v)
    CHECK(rb.solution.vertex_positions[perm(v)] == ra.solution.vertex_positions[v]);
  for (auto& [ei, len] : ra.solution.edge_lengths)
    CHECK(rb.solution.edge_lengths.at(ei) == len);
}

TEST_CASE("random translations are deterministic") {
  std::vector<AffineConstraint> A = {plane_point(-2, 0), plane_point(0, -3)};
  auto t1 = random_generic_translation(A, 12345, 50);
  auto t2 = random_generic_translation(A, 12345, 50);
  for (size_t i = 0; i < A.size(); ++i) CHECK(t1[i].base == t2[i].base);
  auto t3 = random_generic_translation(A, 54321, 50);
  bool same = true;
  for (size_t i = 0; i < A.size(); ++i) same &= t1[i].base == t3[i].base;
  CHECK(!same);
  auto t4 = random_generic_translation(A, 12345, 0);
  for (size_t i = 0; i < A.size(); ++i) CHECK(t4[i].base == A[i].base);
  for (size_t i = 0; i < A.size(); ++i) CHECK(t1[i].directions == A[i].directions);
}
