#pragma once

// The counting pipeline: fused enumeration of marking assignments per type
// via a subtree DP over position polyhedra, exact matching, audits,
// resampling, and the deterministic total.

#include "tropic/multiplicity.hpp"
#include "tropic/polyhedral.hpp"

namespace tropic {

struct CountOptions {
  std::uint64_t seed = 1;
  long box = 50;
  bool allow_resample = true;
  int max_retries = 8;
  int threads = 1;
  bool audit_warnings_only = false;
  bool distance_pruning = true;
};

struct CurveRecord {
  TropicalType type;  // marked
  CurveSolution solution;
  MultiplicityRecord mult;
  std::string code;
};

struct CountResult {
  Int total;
  std::vector<CurveRecord> curves;  // sorted by canonical code
  std::vector<AffineConstraint> constraints_used;
  int resamples = 0;
  std::vector<std::string> warnings;
};

struct NonGenericConstraints : std::runtime_error {
  explicit NonGenericConstraints(const std::string& what)
      : std::runtime_error(what) {}
};

CountResult count_tropical(const Degree& d, const std::vector<AffineConstraint>& A,
                           const CountOptions& opts = {});

}  // namespace tropic
