#pragma once

// Exhaustive enumeration of the combinatorial objects attached to a graph:
// simple cycles, simple paths base -> cemetery, spanning trees, and the
// coordinates of the flow space {z : div z = unit mass at the base} induced
// by a spanning tree. All enumerations are exact backtracking searches and
// return their results in a canonical order (lexicographic by sorted edge
// indices), so downstream matrices have a reproducible basis.

#include "rwde/graph.hpp"
#include "rwde/linalg.hpp"

#include <span>
#include <vector>

namespace rwde {

struct SignedEdge {
  EdgeIndex edge;
  int sign;  // +1 when traversed tail -> head
};

/// A simple cycle or a simple path base -> cemetery, stored as a walk.
///
/// Cycles from enumerate_cycles() are oriented so that their smallest edge
/// has sign +1; fundamental cycles are oriented along the defining edge.
/// Paths always run from the base to the cemetery.
struct SignedEdgeSet {
  enum class Kind { Cycle, Path };

  Kind kind = Kind::Cycle;
  std::vector<SignedEdge> steps;
  /// Vertices along the walk. A path lists k+1 vertices, a cycle k (closing implicitly).
  std::vector<VertexId> walk;
  bool directed = false;

  EdgeMask mask() const;
  /// 0 when e is not in the set.
  int sign(EdgeIndex e) const;
  std::vector<EdgeIndex> sorted_edges() const;
  std::size_t size() const { return steps.size(); }

  /// chi = sum_e sign(e) delta_e as an edge-indexed vector.
  template <class S>
  std::vector<S> indicator(std::size_t num_edges) const {
    std::vector<S> chi(num_edges, S(0));
    for (const auto& s : steps) chi[s.edge] = S(s.sign);
    return chi;
  }
};

struct SpanningTree {
  std::vector<EdgeIndex> edges;  // sorted
  bool directed = false;

  EdgeMask mask() const;
  bool contains(EdgeIndex e) const;
};

std::vector<SignedEdgeSet> enumerate_cycles(const DirectedGraph& g);
/// Simple paths in the underlying undirected multigraph from the base to the cemetery.
std::vector<SignedEdgeSet> enumerate_paths(const DirectedGraph& g);
std::vector<SpanningTree> enumerate_spanning_trees(const DirectedGraph& g, bool directed_only = false);

/// Builds a SpanningTree from an edge set, checking the tree property. Throws DomainError otherwise.
SpanningTree make_spanning_tree(const DirectedGraph& g, std::vector<EdgeIndex> edges);
bool is_directed_tree(const DirectedGraph& g, EdgeMask edges);

/// The unique cycle in T + e0, oriented so that e0 has sign +1. Throws DomainError if e0 is in T.
SignedEdgeSet fundamental_cycle(const DirectedGraph& g, const SpanningTree& tree, EdgeIndex e0);
/// The unique simple path base -> cemetery inside T.
SignedEdgeSet tree_path(const DirectedGraph& g, const SpanningTree& tree);

/// Edges not in T, increasing. These are the coordinates of the flow space in the chart of T.
std::vector<EdgeIndex> cotree(const DirectedGraph& g, const SpanningTree& tree);

/// Cycle rank of the edge subset: |S| - |V(S)| + #components.
std::size_t genus(const DirectedGraph& g, EdgeMask subset);

/// The unique z with div z = delta_base and z_e = u_e on the cotree of T
/// (u ordered as cotree()). Solved by eliminating tree leaves towards the
/// cemetery, so rational input gives an exact rational flow.
template <class S>
std::vector<S> solve_tree_coordinates(const DirectedGraph& g, const SpanningTree& tree, std::span<const S> u);

/// Affine chart z = offset + jacobian * u of the flow space for one spanning tree.
template <class S>
struct TreeChart {
  SpanningTree tree;
  std::vector<EdgeIndex> coordinates;  // cotree edges
  std::vector<S> offset;               // |E|
  DenseMatrix<S> jacobian;             // |E| x d

  TreeChart(const DirectedGraph& g, SpanningTree t);

  std::size_t dimension() const { return coordinates.size(); }
  std::vector<S> flow(std::span<const S> u) const;
};

/// True iff the hyperplanes {z_e = 0}, e in `subset`, restricted to the flow
/// space form a basis of the arrangement: |subset| = |E| - |U| and the
/// restricted linear forms are independent (exact rank test).
bool is_arrangement_basis(const DirectedGraph& g, EdgeMask subset);

}  // namespace rwde
