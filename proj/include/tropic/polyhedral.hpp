#pragma once

// H-representation polyhedra over Q with an exact Fourier-Motzkin engine,
// polyhedral decompositions of Q^n, asymptotic fans, cones over cells, the
// adapted-decomposition construction, and integrality rescaling.

#include <array>

#include "tropic/constraint.hpp"

namespace tropic {

// <m, x> >= c (or > c when strict); m integral and (m, c) coprime
struct LinIneq {
  IntVec m;
  Int c;
  bool strict = false;

  bool operator==(const LinIneq& o) const {
    return m == o.m && c == o.c && strict == o.strict;
  }
  bool operator<(const LinIneq& o) const {
    if (m != o.m) return m < o.m;
    if (c != o.c) return c < o.c;
    return strict < o.strict;
  }
};

LinIneq normalize_ineq(IntVec m, Int c, bool strict = false);
LinIneq normalize_ineq(const RatVec& m, const Rat& c, bool strict = false);

// Fourier-Motzkin: exact feasibility, sample points, implication
// in-place helpers return false when a constant row is infeasible
bool fm_compress(std::vector<LinIneq>& sys);
bool fm_eliminate(std::vector<LinIneq>& sys, int v);
bool fm_feasible(int n, std::vector<LinIneq> sys);
std::optional<RatVec> fm_point(int n, std::vector<LinIneq> sys);
bool implies(int n, const std::vector<LinIneq>& sys, const LinIneq& q);

// machine-word rows for hot feasibility loops; overflow reports let callers
// fall back to the exact routines above
constexpr int kFastVars = 16;

struct FastRow {
  std::array<long long, kFastVars> m;  // columns >= the variable count stay 0
  long long c;
  bool strict;
  std::array<std::uint64_t, 2> anc{};  // ancestor rows (Imbert redundancy rule)
};

enum class FastStatus { Ok, Infeasible, Overflow };

bool fast_from(int n, const LinIneq& q, FastRow& r);  // false when out of range
void fast_normalize(int n, FastRow& r);
FastStatus fast_compress(int n, std::vector<FastRow>& sys);
// step >= 1 drops combinations with more than step+1 ancestors (sound for
// projections once ancestors are seeded by fast_feasible)
FastStatus fast_eliminate(int n, std::vector<FastRow>& sys, int v, int step = 0);
FastStatus fast_feasible(int n, std::vector<FastRow> sys);
// drop rows implied by the rest; conservative under overflow
void fast_irredundant(int n, std::vector<FastRow>& sys);

// closed polyhedron {x : <m_i, x> >= c_i}; strict flags unused in stored cells
struct HPolyhedron {
  int n = 0;
  std::vector<LinIneq> ineqs;

  static HPolyhedron whole(int n) { return {n, {}}; }
};

bool is_empty(const HPolyhedron& p);
bool contains_point(const HPolyhedron& p, const RatVec& x);
HPolyhedron intersect(const HPolyhedron& a, const HPolyhedron& b);
HPolyhedron irredundant(HPolyhedron p);
int poly_dim(const HPolyhedron& p);  // -1 when empty
RatVec relative_interior_point(const HPolyhedron& p);  // requires nonempty
HPolyhedron face_at(const HPolyhedron& p, const RatVec& x);  // active ineqs to equalities
bool subset_of(const HPolyhedron& a, const HPolyhedron& b);
bool poly_equal(const HPolyhedron& a, const HPolyhedron& b);
bool strongly_convex(const HPolyhedron& p);
std::string poly_key(const HPolyhedron& p);  // canonical form of irredundant rep
std::vector<RatVec> poly_vertices(const HPolyhedron& p);

struct Fan {
  int n = 0;
  std::vector<HPolyhedron> cones;  // maximal cones, all c = 0
};

struct PolyhedralComplex {
  int n = 0;
  std::vector<HPolyhedron> cells;  // maximal cells
};

struct IncompleteComplex : std::runtime_error {
  IncompleteComplex() : std::runtime_error("not a complete polyhedral complex") {}
};
struct RayNotInFan : std::runtime_error {
  explicit RayNotInFan(const std::string& what) : std::runtime_error(what) {}
};

// drop the constants: lim_{a->0} a Xi
HPolyhedron asymptotic_cone(const HPolyhedron& p);

// C(Xi) = {(x, b) : b >= 0, <m_i, x> - b c_i >= 0} in rank n+1
HPolyhedron cone_over_cell(const HPolyhedron& p);

// pairwise intersections are common faces (Def of a decomposition), cells
// strongly convex
bool check_complex(const PolyhedralComplex& p);
// every facet of a maximal cell is shared by exactly one other maximal cell
bool check_complete(const PolyhedralComplex& p);

Fan asymptotic_fan(const PolyhedralComplex& p);  // throws IncompleteComplex

PolyhedralComplex translate_fan(const Fan& f, const RatVec& v);

// the five/six-cell construction subdividing along the segment [v1, v2]
PolyhedralComplex edge_decomposition(const Fan& sigma, const RatVec& v1,
                                     const RatVec& v2);

PolyhedralComplex common_refinement(const PolyhedralComplex& a,
                                    const PolyhedralComplex& b);

// decomposition with every curve edge in the 1-skeleton and every curve
// vertex and extra point among the 0-cells
PolyhedralComplex adapted_decomposition(const std::vector<CurveSolution>& curves,
                                        const Fan& sigma,
                                        const std::vector<RatVec>& extra_points);

// segment [a, b], or the ray a + Q>=0 b when ray is true
bool contains_in_one_skeleton(const PolyhedralComplex& p, const RatVec& a,
                              const RatVec& b, bool ray = false);

// minimal k making all 0-cells integral and every bounded curve edge of
// integral length divisible by its weight after rescaling by k
Int integral_rescale(const PolyhedralComplex& p,
                     const std::vector<CurveSolution>& curves);

}  // namespace tropic
