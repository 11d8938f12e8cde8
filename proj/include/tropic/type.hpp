#pragma once

// Tropical types: weighted trivalent trees with primitive flag directions,
// their canonical forms, and the enumeration of all types of a given degree.

#include <optional>
#include <string>
#include <vector>

#include "tropic/degree.hpp"

namespace tropic {

struct TypeEdge {
  int v0 = 0;   // base vertex
  int v1 = -1;  // second vertex; -1 for unbounded edges
  Int weight;   // positive
  IntVec dir;   // primitive direction of the flag (v0, E); at v1 it is -dir

  bool bounded() const { return v1 >= 0; }
};

// A type, optionally marked: `marks` is the ordered tuple (E_1..E_l) of edge
// indices; empty means unmarked. Isomorphisms must respect the tuple order.
struct TropicalType {
  int n = 0;
  int num_vertices = 0;
  std::vector<TypeEdge> edges;
  std::vector<int> marks;

  int unbounded_count() const {
    int c = 0;
    for (auto& e : edges)
      if (!e.bounded()) ++c;
    return c;
  }
  int bounded_count() const { return int(edges.size()) - unbounded_count(); }

  Degree degree() const;

  // outgoing weighted vector w*dir at the flag (v, E); v must be an endpoint
  IntVec outgoing(int v, const TypeEdge& e) const;
};

// Structural sanity: connected trivalent tree, primitive directions, positive
// weights, balancing at every vertex. Returns an explanation on failure.
std::optional<std::string> check_type(const TropicalType& t);

// Injective on isomorphism classes (markings as an ordered tuple).
std::string canonical_code(const TropicalType& t);

struct LabeledTree {
  int num_leaves = 0;    // leaves are vertices 0..num_leaves-1
  int num_vertices = 0;  // internal vertices follow
  std::vector<std::pair<int, int>> edges;
};

struct TooFewLeaves : std::runtime_error {
  TooFewLeaves() : std::runtime_error("enumerate_leaf_trees: need e >= 3") {}
};

// All (2e-5)!! trivalent trees with e labeled leaves.
std::vector<LabeledTree> enumerate_leaf_trees(int e);

// Assign the degree's weighted vectors to the leaves of a labeled tree and
// read off the type. nullopt iff some bounded edge would be contracted
// (zero side-sum).
std::optional<TropicalType> derive_type(const LabeledTree& tree,
                                        const std::vector<IntVec>& leaf_vectors);

// All trivalent genus-0 types of degree d, deduplicated by canonical code.
std::vector<TropicalType> enumerate_types(const Degree& d);

struct CodimensionMismatch : std::runtime_error {
  CodimensionMismatch()
      : std::runtime_error("sum of codimensions must equal e+n-3") {}
};

// Marked types: every assignment of the ordered l-tuple of markings to edges,
// pruned by the distance bound dist(E_i,E_j) >= d_i+d_j-n and deduplicated.
// l = 0 returns the unmarked census unchanged.
std::vector<TropicalType> enumerate_marked_types(const Degree& d, int l,
                                                 const std::vector<int>& codims);

// dist[i][j] = minimal number of other edges on a path joining edge i and
// edge j; 0 for adjacent or equal edges.
std::vector<std::vector<int>> edge_distances(const TropicalType& t);

}  // namespace tropic
