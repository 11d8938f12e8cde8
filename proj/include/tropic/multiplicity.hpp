#pragma once

// Per-curve multiplicities: total marked weight, the lattice index D of the
// integral matching map, the delta indices, Mikhalkin's 2-D vertex
// multiplicity with the equivalence check, and the Kontsevich oracle.

#include "tropic/constraint.hpp"

namespace tropic {

// inner weight w(Gamma): product of bounded-edge weights only
Int inner_weight(const TropicalType& t);

// inner weight times the weights of the marked edges: w(Gamma, E)
Int total_marked_weight(const TropicalType& t);

// Presentation matrix of the cokernel of the integral matching map
// map(Gamma^0, N) -> prod_E N/Zu x prod_i N/(Qu_i + L(A_i)) n N:
// vertex-basis image columns followed by relation columns per quotient block.
IntMat lattice_map_matrix(const TropicalType& t,
                          const std::vector<AffineConstraint>& A);

struct InfiniteIndex : std::runtime_error {
  InfiniteIndex() : std::runtime_error("lattice map does not have finite cokernel") {}
};

Int curve_index_D(const TropicalType& t, const std::vector<AffineConstraint>& A);

std::vector<Int> delta_indices(const TropicalType& t,
                               const std::vector<AffineConstraint>& A);

struct MultiplicityRecord {
  Int marked_weight;
  Int D_index;
  std::vector<Int> deltas;
  Int D_tilde;       // D_index * prod(deltas)
  Int contribution;  // marked_weight * D_tilde
};

MultiplicityRecord multiplicity_record(const TropicalType& t,
                                       const std::vector<AffineConstraint>& A);

struct WrongDimension : std::runtime_error {
  WrongDimension() : std::runtime_error("Mikhalkin multiplicities need n = 2") {}
};

// w(E1) w(E2) |det(u1, u2)| at a trivalent plane vertex; independent of the
// chosen edge pair by balancing (asserted).
Int mikhalkin_vertex_mult(const TropicalType& t, int v);

struct Equivalence2D {
  Int lhs;  // w(Gamma) * D
  Int rhs;  // product of vertex multiplicities
  bool equal;
};

Equivalence2D check_2d_equivalence(const TropicalType& t,
                                   const std::vector<AffineConstraint>& A);

// N_1..N_dmax rational plane curve counts via the WDVV recursion.
std::vector<Int> kontsevich_oracle(int dmax);

}  // namespace tropic
