#pragma once

#include "rwde/combinatorics.hpp"
#include "rwde/graph.hpp"

#include <span>
#include <vector>

namespace rwde {

/// Bipartite doubling of G: every x in U becomes x- and x+, joined by a
/// vertex edge (x-, x+) of weight -beta_x; every edge (x, y) of G becomes
/// (x+, y-), or (x+, cemetery) when y is the cemetery, with the same weight.
/// The base point is x0-. Lifted edges keep their ids and come first, in
/// the order of G; vertex edges follow in U order.
struct HatGraph {
  DirectedGraph graph;
  std::vector<EdgeIndex> lifted;       // lifted[e] = index of the image of e
  std::vector<EdgeIndex> vertex_edge;  // vertex_edge[i] for the i-th transient vertex of G
  std::size_t original_edge_count = 0;

  bool is_vertex_edge(EdgeIndex hat_edge) const { return hat_edge >= original_edge_count; }

  /// T + {vertex edges}; a spanning tree of the hat graph, directed iff T is.
  SpanningTree lift_tree(const SpanningTree& tree) const;
  /// Drops the vertex edges and maps back to edge indices of G. Throws
  /// DomainError unless every vertex edge is in the tree.
  SpanningTree restrict_tree(const DirectedGraph& g, const SpanningTree& hat_tree) const;

  /// Edge vector on the hat graph: lambda on lifted edges, zero on vertex edges.
  template <class S>
  std::vector<S> lift_edge_values(std::span<const S> values) const {
    std::vector<S> out(graph.num_edges(), S(0));
    for (std::size_t e = 0; e < lifted.size(); ++e) out[lifted[e]] = values[e];
    return out;
  }

  /// Weights on the hat graph from weights on G: alpha on lifted edges, -beta_x on vertex edges.
  template <class S>
  std::vector<S> lift_weights(const DirectedGraph& g, std::span<const S> alpha) const {
    std::vector<S> out = lift_edge_values(alpha);
    const auto transient = g.transient_vertices();
    for (std::size_t i = 0; i < transient.size(); ++i) {
      S beta(0);
      for (EdgeIndex e : g.out_edges(transient[i])) beta += alpha[e];
      out[vertex_edge[i]] = -beta;
    }
    return out;
  }
};

HatGraph hat_graph(const DirectedGraph& g);

}  // namespace rwde
