#include "rwde/hat_graph.hpp"

#include <algorithm>
#include <set>

namespace rwde {
namespace {

std::string unique_name(std::string candidate, std::set<std::string>& taken) {
  while (taken.count(candidate)) candidate += "'";
  taken.insert(candidate);
  return candidate;
}

}  // namespace

HatGraph hat_graph(const DirectedGraph& g) {
  const auto transient = g.transient_vertices();
  std::set<std::string> vertex_names;
  std::vector<std::string> minus(g.num_vertices()), plus(g.num_vertices());
  std::vector<std::string> names;
  vertex_names.insert(g.vertex_name(g.cemetery()));
  for (VertexId x : transient) {
    minus[x] = unique_name(g.vertex_name(x) + "-", vertex_names);
    plus[x] = unique_name(g.vertex_name(x) + "+", vertex_names);
    names.push_back(minus[x]);
    names.push_back(plus[x]);
  }
  names.push_back(g.vertex_name(g.cemetery()));

  std::set<std::string> edge_ids;
  for (const auto& e : g.edges()) edge_ids.insert(e.id);

  std::vector<EdgeSpec> specs;
  std::vector<EdgeIndex> lifted, vertex_edge;
  const auto betas = g.betas();
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const std::string head = edge.head == g.cemetery() ? g.vertex_name(g.cemetery()) : minus[edge.head];
    const std::string tail = edge.tail == g.cemetery() ? g.vertex_name(g.cemetery()) : plus[edge.tail];
    lifted.push_back(specs.size());
    specs.push_back({edge.id, tail, head, edge.alpha});
  }
  for (VertexId x : transient) {
    vertex_edge.push_back(specs.size());
    specs.push_back({unique_name("e_" + g.vertex_name(x), edge_ids), minus[x], plus[x], Rational(-betas[x])});
  }
  const std::string base = g.base() == g.cemetery() ? g.vertex_name(g.cemetery()) : minus[g.base()];
  return HatGraph{DirectedGraph(std::move(names), g.vertex_name(g.cemetery()), base, specs), std::move(lifted),
                  std::move(vertex_edge), g.num_edges()};
}

SpanningTree HatGraph::lift_tree(const SpanningTree& tree) const {
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : tree.edges) edges.push_back(lifted.at(e));
  edges.insert(edges.end(), vertex_edge.begin(), vertex_edge.end());
  std::sort(edges.begin(), edges.end());
  return make_spanning_tree(graph, std::move(edges));
}

SpanningTree HatGraph::restrict_tree(const DirectedGraph& g, const SpanningTree& hat_tree) const {
  for (EdgeIndex v : vertex_edge)
    if (!hat_tree.contains(v)) throw DomainError("hat tree does not contain every vertex edge");
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e = 0; e < lifted.size(); ++e)
    if (hat_tree.contains(lifted[e])) edges.push_back(e);
  return make_spanning_tree(g, std::move(edges));
}

}  // namespace rwde
