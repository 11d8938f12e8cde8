#pragma once

// Affine constraints, the matching system per marked type, genericity audits,
// and random translations within a parallel class of constraints.

#include <cstdint>
#include <map>

#include "tropic/linalg.hpp"
#include "tropic/type.hpp"

namespace tropic {

struct AffineConstraint {
  int n = 0;
  RatVec base;                     // a_i
  std::vector<IntVec> directions;  // saturated basis of L(A_i) n Z^n

  int codim() const { return n - 1 - int(directions.size()); }
};

struct ConstraintValidation {
  enum Reason { None, RankMismatch, UnsaturatedBasis, CodimensionSum };
  bool ok = false;
  Reason reason = None;
  std::string detail;
};

ConstraintValidation validate_constraints(const Degree& d,
                                          const std::vector<AffineConstraint>& A);

struct CurveSolution {
  TropicalType type;  // marked
  std::vector<RatVec> vertex_positions;
  std::map<int, Rat> edge_lengths;  // bounded edge index -> lambda > 0
  std::vector<Rat> t_params;        // per marking
  std::vector<RatVec> s_params;     // per marking, one coordinate per direction
};

// lower endpoint of an edge for the fixed orientation: the smaller vertex id
inline int lower_end(const TypeEdge& e) {
  return e.bounded() ? std::min(e.v0, e.v1) : e.v0;
}

// flag direction at the lower endpoint
inline IntVec lower_dir(const TypeEdge& e) {
  return (!e.bounded() || e.v0 < e.v1) ? e.dir : neg(e.dir);
}

struct MatchResult {
  enum Kind { Matched, NoSolution, Degenerate } kind;
  enum Reason { PositivityFail, SegmentFail, Inconsistent, ZeroFamily } reason;  // NoSolution only
  CurveSolution solution;  // Matched only
};

// Solve the matching system for a marked type: unique solution satisfying all
// positivity/segment conditions, or the reason there is none. Degenerate
// signals a positional accident (singular but consistent system) - resample.
// ZeroFamily: a solution family that persists under every translation of the
// constraints (singular matrix, hence multiplicity 0) - contributes nothing.
MatchResult match_type(const TropicalType& t, const std::vector<AffineConstraint>& A);

struct GenericityViolation {
  enum Kind {
    TrivalenceFail,
    VertexOnConstraint,
    NonInjectiveVertices,
    NonInjectiveMap,
    MarkedPointAtVertex
  } kind;
  std::string witness;
};

struct GenericityReport {
  std::vector<GenericityViolation> violations;
  int transversal_crossings = 0;  // n = 2 only; informational, not a violation

  bool clean() const { return violations.empty(); }
};

GenericityReport genericity_audit(const CurveSolution& s,
                                  const std::vector<AffineConstraint>& A);

// Translate every base point by a random rational vector (numerators uniform
// in [-box, box] over a fixed denominator); deterministic per seed.
std::vector<AffineConstraint> random_generic_translation(
    const std::vector<AffineConstraint>& A, std::uint64_t seed, long box);

}  // namespace tropic
