#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tropic/count.hpp"
#include "tropic/polyhedral.hpp"

using namespace tropic;

namespace {

LinIneq row(std::vector<long> m, long c, bool strict = false) {
  IntVec mi(m.size());
  for (size_t j = 0; j < m.size(); ++j) mi[j] = Int(m[j]);
  return normalize_ineq(std::move(mi), Int(c), strict);
}

RatVec pt(std::vector<Rat> x) { return x; }

// cone spanned by u and v in the plane, as two halfplane rows
HPolyhedron cone2(std::pair<long, long> u, std::pair<long, long> v) {
  auto side = [](std::pair<long, long> a, std::pair<long, long> b) {
    // normal vanishing on a, nonnegative on b
    long nx = -a.second, ny = a.first;
    if (nx * b.first + ny * b.second < 0) {
      nx = -nx;
      ny = -ny;
    }
    return row({nx, ny}, 0);
  };
  return {2, {side(u, v), side(v, u)}};
}

Fan p2_fan() {
  return {2,
          {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, -1}),
           cone2({-1, -1}, {1, 0})}};
}

Fan p1p1_fan() {
  return {2,
          {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, 0}),
           cone2({-1, 0}, {0, -1}), cone2({0, -1}, {1, 0})}};
}

std::set<std::string> keys(const std::vector<HPolyhedron>& cells) {
  std::set<std::string> k;
  for (auto& c : cells) k.insert(poly_key(c));
  return k;
}

Degree plane_degree(int d) {
  Degree deg;
  deg.n = 2;
  deg.rays[{Int(-1), Int(0)}] = d;
  deg.rays[{Int(0), Int(-1)}] = d;
  deg.rays[{Int(1), Int(1)}] = d;
  return deg;
}

AffineConstraint plane_point(Rat x, Rat y) {
  AffineConstraint c;
  c.n = 2;
  c.base = {std::move(x), std::move(y)};
  return c;
}

}  // namespace

TEST_CASE("fourier-motzkin basics") {
  // triangle x >= 0, y >= 0, x + y <= 1
  std::vector<LinIneq> tri = {row({1, 0}, 0), row({0, 1}, 0), row({-1, -1}, -1)};
  CHECK(fm_feasible(2, tri));
  auto p = fm_point(2, tri);
  REQUIRE(p.has_value());
  HPolyhedron t{2, tri};
  CHECK(contains_point(t, *p));
  CHECK(implies(2, tri, row({1, 1}, -5)));
  CHECK(!implies(2, tri, row({1, 0}, 1)));

  auto inf = tri;
  inf.push_back(row({1, 1}, 2));
  CHECK(!fm_feasible(2, inf));

  // open interval 0 < x < 1
  std::vector<LinIneq> open = {row({1}, 0, true), row({-1}, -1, true)};
  auto q = fm_point(1, open);
  REQUIRE(q.has_value());
  CHECK((*q)[0] > 0);
  CHECK((*q)[0] < 1);
  CHECK(!fm_feasible(1, {row({1}, 0, true), row({-1}, 0)}));
}

TEST_CASE("fast rows agree with exact rows") {
  std::vector<LinIneq> sys = {row({3, -2, 1}, 4), row({-1, 5, -7}, -2),
                              row({0, 1, 1}, 0), row({2, 2, -3}, 1),
                              row({-4, 0, 1}, -9)};
  std::vector<FastRow> fs(sys.size());
  for (size_t i = 0; i < sys.size(); ++i) REQUIRE(fast_from(3, sys[i], fs[i]));
  CHECK(fast_feasible(3, fs) == FastStatus::Ok);
  CHECK(fm_feasible(3, sys));

  sys.push_back(row({1, 0, 0}, 5));
  sys.push_back(row({-1, 0, 0}, -1));
  fs.resize(sys.size());
  for (size_t i = 0; i < sys.size(); ++i) REQUIRE(fast_from(3, sys[i], fs[i]));
  CHECK(fast_feasible(3, fs) == FastStatus::Infeasible);
  CHECK(!fm_feasible(3, sys));

  LinIneq big = row({1}, 0);
  big.c = Int("123456789012345678901234567890");
  FastRow fr;
  CHECK(!fast_from(1, big, fr));
}

TEST_CASE("polyhedron queries") {
  HPolyhedron square{2,
                     {row({1, 0}, 0), row({0, 1}, 0), row({-1, 0}, -1),
                      row({0, -1}, -1)}};
  CHECK(!is_empty(square));
  CHECK(poly_dim(square) == 2);
  CHECK(strongly_convex(square));
  auto vs = poly_vertices(square);
  CHECK(vs.size() == 4);
  RatVec corner = pt({Rat(0), Rat(0)});
  HPolyhedron f = face_at(square, corner);
  CHECK(poly_dim(f) == 0);
  CHECK(contains_point(f, corner));

  HPolyhedron seg{2, {row({1, 0}, 0), row({-1, 0}, -1), row({0, 1}, 0),
                      row({0, -1}, 0)}};
  CHECK(poly_dim(seg) == 1);
  CHECK(subset_of(seg, square));
  CHECK(!subset_of(square, seg));
  CHECK(poly_equal(square, irredundant(square)));

  HPolyhedron strip{2, {row({0, 1}, 0), row({0, -1}, -1)}};
  CHECK(!strongly_convex(strip));
}

TEST_CASE("asymptotic cone") {
  HPolyhedron q{2, {row({1, 0}, 1), row({0, 1}, 2)}};
  CHECK(poly_equal(asymptotic_cone(q),
                   HPolyhedron{2, {row({1, 0}, 0), row({0, 1}, 0)}}));

  HPolyhedron square{2,
                     {row({1, 0}, 0), row({0, 1}, 0), row({-1, 0}, -1),
                      row({0, -1}, -1)}};
  HPolyhedron o = asymptotic_cone(square);
  CHECK(poly_dim(o) == 0);
  CHECK(contains_point(o, pt({Rat(0), Rat(0)})));

  HPolyhedron half{1, {row({1}, -1)}};
  CHECK(poly_equal(asymptotic_cone(half), HPolyhedron{1, {row({1}, 0)}}));

  // scale invariance: 3*Xi has the same asymptotic cone
  HPolyhedron scaled{2, {row({1, 0}, 3), row({0, 1}, 6)}};
  CHECK(poly_equal(asymptotic_cone(scaled), asymptotic_cone(q)));
}

TEST_CASE("cone over cell") {
  HPolyhedron half{1, {row({1}, 1)}};
  HPolyhedron c = cone_over_cell(half);
  CHECK(c.n == 2);
  CHECK(contains_point(c, pt({Rat(1), Rat(1)})));
  CHECK(contains_point(c, pt({Rat(1), Rat(0)})));
  CHECK(!contains_point(c, pt({Rat(0), Rat(1)})));

  HPolyhedron origin{1, {row({1}, 0), row({-1}, 0)}};
  HPolyhedron ray = cone_over_cell(origin);
  CHECK(poly_dim(ray) == 1);
  CHECK(contains_point(ray, pt({Rat(0), Rat(5)})));

  HPolyhedron unit{1, {row({1}, 0), row({-1}, -1)}};
  HPolyhedron span = cone_over_cell(unit);
  CHECK(contains_point(span, pt({Rat(0), Rat(1)})));
  CHECK(contains_point(span, pt({Rat(1), Rat(1)})));
  CHECK(!contains_point(span, pt({Rat(2), Rat(1)})));

  // restriction to {b = 0} recovers the asymptotic cone
  HPolyhedron q{2, {row({1, 0}, 1), row({0, 1}, 2)}};
  HPolyhedron cq = cone_over_cell(q);
  cq.ineqs.push_back(row({0, 0, -1}, 0));
  // drop the b coordinate from points: the slice equals asymptotic_cone x {0}
  HPolyhedron ac = asymptotic_cone(q);
  CHECK(contains_point(cq, pt({Rat(1), Rat(1), Rat(0)})));
  CHECK(contains_point(ac, pt({Rat(1), Rat(1)})));
  CHECK(!contains_point(cq, pt({Rat(-1), Rat(0), Rat(0)})));
  CHECK(!contains_point(ac, pt({Rat(-1), Rat(0)})));
}

TEST_CASE("edge decomposition of the P2 fan") {
  Fan sigma = p2_fan();
  PolyhedralComplex p =
      edge_decomposition(sigma, pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)}));
  CHECK(p.cells.size() == 5);
  CHECK(check_complex(p));
  CHECK(check_complete(p));
  Fan back = asymptotic_fan(p);
  CHECK(keys(back.cones) == keys(sigma.cones));
  // the subdividing segment lies in the 1-skeleton
  CHECK(contains_in_one_skeleton(p, pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)})));
  // a generic segment does not
  CHECK(!contains_in_one_skeleton(p, pt({Rat(1, 2), Rat(1, 4)}),
                                  pt({Rat(2), Rat(1, 3)})));
}

TEST_CASE("edge decomposition of the P1xP1 fan") {
  PolyhedralComplex p =
      edge_decomposition(p1p1_fan(), pt({Rat(0), Rat(0)}), pt({Rat(2), Rat(0)}));
  CHECK(p.cells.size() == 6);
  CHECK(check_complex(p));
  CHECK(check_complete(p));
  CHECK(keys(asymptotic_fan(p).cones) == keys(p1p1_fan().cones));
}

TEST_CASE("translated fan and incomplete complexes") {
  Fan sigma = p2_fan();
  PolyhedralComplex p = translate_fan(sigma, pt({Rat(3), Rat(-2)}));
  CHECK(p.cells.size() == 3);
  CHECK(check_complex(p));
  CHECK(check_complete(p));
  CHECK(keys(asymptotic_fan(p).cones) == keys(sigma.cones));

  PolyhedralComplex partial{2, {sigma.cones[0]}};
  CHECK(check_complex(partial));
  CHECK(!check_complete(partial));
  CHECK_THROWS_AS(asymptotic_fan(partial), IncompleteComplex);
}

TEST_CASE("common refinement") {
  Fan sigma = p2_fan();
  PolyhedralComplex p = translate_fan(sigma, pt({Rat(0), Rat(0)}));
  PolyhedralComplex same = common_refinement(p, p);
  CHECK(keys(same.cells) == keys(p.cells));

  PolyhedralComplex whole{2, {HPolyhedron::whole(2)}};
  CHECK(keys(common_refinement(p, whole).cells) == keys(p.cells));

  PolyhedralComplex q = translate_fan(sigma, pt({Rat(1), Rat(0)}));
  PolyhedralComplex r = common_refinement(p, q);
  CHECK(r.cells.size() == 5);
  CHECK(check_complex(r));
  CHECK(check_complete(r));
}

TEST_CASE("adapted decomposition for a line and an extra point") {
  Fan sigma = p2_fan();
  RatVec extra = pt({Rat(5), Rat(7)});
  PolyhedralComplex star = adapted_decomposition({}, sigma, {extra});
  CHECK(keys(star.cells) == keys(translate_fan(sigma, extra).cells));

  // the unique line through two points
  auto A = std::vector<AffineConstraint>{plane_point(Rat(0), Rat(0)),
                                         plane_point(Rat(2), Rat(1))};
  CountResult line = count_tropical(plane_degree(1), A);
  REQUIRE(line.curves.size() == 1);
  const CurveSolution& s = line.curves[0].solution;
  // fan with rays along the curve's unbounded directions
  Fan dual{2, {cone2({-1, 0}, {0, -1}), cone2({0, -1}, {1, 1}),
               cone2({1, 1}, {-1, 0})}};
  PolyhedralComplex p = adapted_decomposition({s}, dual, {});
  CHECK(check_complex(p));
  CHECK(check_complete(p));
  const RatVec& v = s.vertex_positions[0];
  CHECK(contains_in_one_skeleton(p, v, pt({Rat(-1), Rat(0)}), true));
  CHECK(contains_in_one_skeleton(p, v, pt({Rat(0), Rat(-1)}), true));
  CHECK(contains_in_one_skeleton(p, v, pt({Rat(1), Rat(1)}), true));

  Fan missing{2, {cone2({1, 0}, {0, 1}), cone2({0, 1}, {-1, 0}),
                  cone2({-1, 0}, {0, -1}), cone2({0, -1}, {1, 0})}};
  CHECK_THROWS_AS(adapted_decomposition({s}, missing, {}), RayNotInFan);
}

TEST_CASE("integral rescale") {
  Fan sigma = p2_fan();
  PolyhedralComplex integral = translate_fan(sigma, pt({Rat(0), Rat(0)}));
  PolyhedralComplex halves = translate_fan(sigma, pt({Rat(1, 2), Rat(1, 2)}));
  CHECK(integral_rescale(integral, {}) == 1);
  CHECK(integral_rescale(halves, {}) == 2);

  // dumbbell with a weight-2 bridge of length 3
  TropicalType t;
  t.n = 2;
  t.num_vertices = 2;
  t.edges.push_back({0, -1, Int(1), {Int(-1), Int(1)}});
  t.edges.push_back({0, -1, Int(1), {Int(-1), Int(-1)}});
  t.edges.push_back({0, 1, Int(2), {Int(1), Int(0)}});
  t.edges.push_back({1, -1, Int(1), {Int(1), Int(1)}});
  t.edges.push_back({1, -1, Int(1), {Int(1), Int(-1)}});
  REQUIRE(!check_type(t).has_value());
  CurveSolution s;
  s.type = t;
  s.vertex_positions = {pt({Rat(0), Rat(0)}), pt({Rat(3), Rat(0)})};
  s.edge_lengths[2] = Rat(3);
  CHECK(integral_rescale(integral, {s}) == 2);

  CurveSolution s2 = s;
  s2.vertex_positions[1] = pt({Rat(2), Rat(0)});
  s2.edge_lengths[2] = Rat(2);
  CHECK(integral_rescale(integral, {s2}) == 1);
  CHECK(integral_rescale(integral, {s, s2}) == 2);
}
