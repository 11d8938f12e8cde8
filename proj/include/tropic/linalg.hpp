#pragma once

// Exact integer and rational linear algebra: Smith normal form, lattice
// saturation and indices, cokernel orders, rational system solving.

#include <optional>
#include <vector>

#include "tropic/arith.hpp"

namespace tropic {

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Rat(0)) {}

  Rat& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Rat& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

// U * M * V = D with U, V unimodular, D diagonal, d_1 | d_2 | ... | d_rank > 0.
// Vinv is kept alongside because lattice saturation reads its rows.
struct SmithDecomposition {
  IntMat D, U, V, Vinv;
  int rank = 0;
};

SmithDecomposition smith_normal_form(const IntMat& M);

// |Z^rows / column-span(M)|; nullopt means infinite (row-rank deficient).
std::optional<Int> cokernel_order(const IntMat& M);

struct LatticeBasis {
  int ambient = 0;
  std::vector<IntVec> vectors;  // Q-linearly independent rows
};

// Basis of span_Q(generators) n Z^n.
LatticeBasis saturate(const std::vector<IntVec>& generators, int n);

struct NotSublattice : std::runtime_error {
  NotSublattice() : std::runtime_error("lattice_index: not a finite-index sublattice") {}
};

// [sup : sub]; throws NotSublattice unless sub is a finite-index sublattice of sup.
Int lattice_index(const LatticeBasis& sub, const LatticeBasis& sup);

struct LinSolve {
  enum Kind { Unique, None, Underdetermined } kind;
  RatVec x;  // populated iff Unique
};

LinSolve solve_rational(const RatMat& A, const RatVec& b);

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMat& M);

int rank(RatMat M);

// Basis of { x : A x = 0 }.
std::vector<RatVec> nullspace(const RatMat& A);

Rat determinant(RatMat M);

}  // namespace tropic
