#pragma once

// JSON schemas for problem files, count results, fans, and polyhedral
// complexes. Rationals travel as "p/q" strings (never floats); a rational
// field may also name a parameter from the problem's params table, with an
// optional leading minus.

#include <json.hpp>

#include "tropic/count.hpp"

namespace tropic {

using Json = nlohmann::ordered_json;  // insertion order -> stable output bytes

using ParamMap = std::map<std::string, Rat>;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ProblemSpec {
  Degree degree;
  std::vector<AffineConstraint> constraints;
  CountOptions options;
  ParamMap params;
};

Json load_json(const std::string& path);  // ParseError with the file name

Rat rat_from_json(const Json& j, const ParamMap& params = {});
Json rat_to_json(const Rat& r);
RatVec ratvec_from_json(const Json& j, const ParamMap& params = {});
Json ratvec_to_json(const RatVec& v);
IntVec intvec_from_json(const Json& j, const ParamMap& params = {});
Json intvec_to_json(const IntVec& v);

// {"n": 3, "rays": [{"v": [...], "count": 2}, ...]}
Degree degree_from_json(const Json& j, const ParamMap& params = {});
Json degree_to_json(const Degree& d);

// {"base": [...], "directions": [[...], ...]}
AffineConstraint constraint_from_json(const Json& j, int n,
                                      const ParamMap& params = {});
Json constraint_to_json(const AffineConstraint& a);

// {"params"?, "degree", "constraints", "options"?}
ProblemSpec problem_from_json(const Json& j);

Json solution_to_json(const CurveSolution& s);
Json count_result_to_json(const CountResult& r);
// re-sum the serialized per-curve contributions (round-trip check)
Int resummed_total(const Json& count_result);

// cells and cones: {"ineqs": [{"m": [...], "c": "p/q"}, ...]}
HPolyhedron cell_from_json(const Json& j, int n);
Json cell_to_json(const HPolyhedron& p);
Fan fan_from_json(const Json& j);               // {"n", "cones": [...]}
PolyhedralComplex complex_from_json(const Json& j);  // {"n", "cells": [...]}
Json complex_to_json(const PolyhedralComplex& p);

}  // namespace tropic
