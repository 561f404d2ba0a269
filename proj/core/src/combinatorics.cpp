#include "rwde/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>

namespace rwde {
namespace {

struct Incidence {
  EdgeIndex edge;
  VertexId other;
  int sign;
};

std::vector<std::vector<Incidence>> undirected_adjacency(const DirectedGraph& g, EdgeMask allowed) {
  std::vector<std::vector<Incidence>> adj(g.num_vertices());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(allowed & edge_bit(e))) continue;
    const Edge& edge = g.edge(e);
    adj[edge.tail].push_back({e, edge.head, +1});
    adj[edge.head].push_back({e, edge.tail, -1});
  }
  return adj;
}

bool all_forward(const std::vector<SignedEdge>& steps) {
  return std::all_of(steps.begin(), steps.end(), [](const SignedEdge& s) { return s.sign > 0; });
}

void sort_canonically(std::vector<SignedEdgeSet>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const SignedEdgeSet& a, const SignedEdgeSet& b) { return a.sorted_edges() < b.sorted_edges(); });
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Walk from `from` to `to` inside the tree (BFS over undirected tree edges).
std::vector<std::pair<SignedEdge, VertexId>> tree_walk(const DirectedGraph& g, const SpanningTree& tree,
                                                       VertexId from, VertexId to) {
  const auto adj = undirected_adjacency(g, tree.mask());
  std::vector<std::optional<Incidence>> via(g.num_vertices());
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<VertexId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& inc : adj[v]) {
      if (seen[inc.other]) continue;
      seen[inc.other] = true;
      via[inc.other] = Incidence{inc.edge, v, inc.sign};
      queue.push_back(inc.other);
    }
  }
  if (!seen[to]) throw DomainError("edge set is not spanning");
  std::vector<std::pair<SignedEdge, VertexId>> rev;
  for (VertexId v = to; v != from; v = via[v]->other) rev.push_back({{via[v]->edge, via[v]->sign}, v});
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

EdgeMask SignedEdgeSet::mask() const {
  EdgeMask m = 0;
  for (const auto& s : steps) m |= edge_bit(s.edge);
  return m;
}

int SignedEdgeSet::sign(EdgeIndex e) const {
  for (const auto& s : steps)
    if (s.edge == e) return s.sign;
  return 0;
}

std::vector<EdgeIndex> SignedEdgeSet::sorted_edges() const {
  std::vector<EdgeIndex> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.edge);
  std::sort(out.begin(), out.end());
  return out;
}

EdgeMask SpanningTree::mask() const {
  EdgeMask m = 0;
  for (EdgeIndex e : edges) m |= edge_bit(e);
  return m;
}

bool SpanningTree::contains(EdgeIndex e) const { return std::binary_search(edges.begin(), edges.end(), e); }

std::vector<SignedEdgeSet> enumerate_cycles(const DirectedGraph& g) {
  std::vector<SignedEdgeSet> cycles;
  const auto adj = undirected_adjacency(g, g.all_edges_mask());
  std::vector<bool> on_walk(g.num_vertices(), false);

  for (EdgeIndex s = 0; s < g.num_edges(); ++s) {
    const Edge& first = g.edge(s);
    if (first.tail == first.head) continue;
    const VertexId start = first.tail;
    std::vector<SignedEdge> steps{{s, +1}};
    std::vector<VertexId> walk{start, first.head};
    on_walk[start] = on_walk[first.head] = true;

    std::function<void(VertexId)> extend = [&](VertexId v) {
      for (const auto& inc : adj[v]) {
        if (inc.edge <= s) continue;
        if (inc.other == start) {
          SignedEdgeSet c;
          c.kind = SignedEdgeSet::Kind::Cycle;
          c.steps = steps;
          c.steps.push_back({inc.edge, inc.sign});
          c.walk = walk;
          c.directed = all_forward(c.steps);
          cycles.push_back(std::move(c));
          continue;
        }
        if (on_walk[inc.other]) continue;
        on_walk[inc.other] = true;
        steps.push_back({inc.edge, inc.sign});
        walk.push_back(inc.other);
        extend(inc.other);
        walk.pop_back();
        steps.pop_back();
        on_walk[inc.other] = false;
      }
    };
    extend(first.head);
    on_walk[start] = on_walk[first.head] = false;
  }
  sort_canonically(cycles);
  return cycles;
}

std::vector<SignedEdgeSet> enumerate_paths(const DirectedGraph& g) {
  std::vector<SignedEdgeSet> paths;
  const auto adj = undirected_adjacency(g, g.all_edges_mask());
  std::vector<bool> on_walk(g.num_vertices(), false);
  std::vector<SignedEdge> steps;
  std::vector<VertexId> walk{g.base()};
  on_walk[g.base()] = true;

  std::function<void(VertexId)> extend = [&](VertexId v) {
    if (v == g.cemetery()) {
      SignedEdgeSet p;
      p.kind = SignedEdgeSet::Kind::Path;
      p.steps = steps;
      p.walk = walk;
      p.directed = all_forward(steps);
      paths.push_back(std::move(p));
      return;
    }
    for (const auto& inc : adj[v]) {
      if (on_walk[inc.other]) continue;
      on_walk[inc.other] = true;
      steps.push_back({inc.edge, inc.sign});
      walk.push_back(inc.other);
      extend(inc.other);
      walk.pop_back();
      steps.pop_back();
      on_walk[inc.other] = false;
    }
  };
  if (g.base() != g.cemetery()) extend(g.base());
  sort_canonically(paths);
  return paths;
}

bool is_directed_tree(const DirectedGraph& g, EdgeMask edges) {
  std::vector<int> out_degree(g.num_vertices(), 0);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (edges & edge_bit(e)) ++out_degree[g.edge(e).tail];
  for (VertexId x : g.transient_vertices())
    if (out_degree[x] != 1) return false;
  return true;
}

std::vector<SpanningTree> enumerate_spanning_trees(const DirectedGraph& g, bool directed_only) {
  std::vector<SpanningTree> trees;
  const std::size_t need = g.num_vertices() - 1;
  const std::size_t m = g.num_edges();
  std::vector<EdgeIndex> chosen;

  // Union-find state is tiny, so it is copied down the recursion instead of rolled back.
  std::function<void(EdgeIndex, std::vector<std::size_t>)> search = [&](EdgeIndex next,
                                                                        std::vector<std::size_t> parent) {
    if (chosen.size() == need) {
      SpanningTree t{chosen, false};
      t.directed = is_directed_tree(g, t.mask());
      if (!directed_only || t.directed) trees.push_back(std::move(t));
      return;
    }
    if (m - next < need - chosen.size()) return;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    for (EdgeIndex e = next; e < m && m - e >= need - chosen.size(); ++e) {
      std::size_t a = find(g.edge(e).tail), b = find(g.edge(e).head);
      if (a == b) continue;
      auto child = parent;
      child[a] = b;
      chosen.push_back(e);
      search(e + 1, std::move(child));
      chosen.pop_back();
    }
  };
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  if (need == 0) {
    trees.push_back(SpanningTree{{}, true});
    return trees;
  }
  search(0, std::move(parent));
  return trees;
}

SpanningTree make_spanning_tree(const DirectedGraph& g, std::vector<EdgeIndex> edges) {
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw DomainError("repeated edge in tree");
  if (edges.size() + 1 != g.num_vertices())
    throw DomainError("a spanning tree needs exactly |V|-1 = " + std::to_string(g.num_vertices() - 1) + " edges");
  UnionFind uf(g.num_vertices());
  for (EdgeIndex e : edges) {
    if (e >= g.num_edges()) throw DomainError("edge index out of range");
    if (!uf.unite(g.edge(e).tail, g.edge(e).head)) throw DomainError("edge set contains a cycle");
  }
  SpanningTree t{std::move(edges), false};
  t.directed = is_directed_tree(g, t.mask());
  return t;
}

SignedEdgeSet fundamental_cycle(const DirectedGraph& g, const SpanningTree& tree, EdgeIndex e0) {
  if (tree.contains(e0)) throw DomainError("fundamental_cycle: edge " + g.edge(e0).id + " belongs to the tree");
  const Edge& edge = g.edge(e0);
  SignedEdgeSet c;
  c.kind = SignedEdgeSet::Kind::Cycle;
  c.steps.push_back({e0, +1});
  c.walk = {edge.tail, edge.head};
  for (const auto& [step, vertex] : tree_walk(g, tree, edge.head, edge.tail)) {
    c.steps.push_back(step);
    if (vertex != edge.tail) c.walk.push_back(vertex);
  }
  c.directed = all_forward(c.steps);
  return c;
}

SignedEdgeSet tree_path(const DirectedGraph& g, const SpanningTree& tree) {
  SignedEdgeSet p;
  p.kind = SignedEdgeSet::Kind::Path;
  p.walk = {g.base()};
  for (const auto& [step, vertex] : tree_walk(g, tree, g.base(), g.cemetery())) {
    p.steps.push_back(step);
    p.walk.push_back(vertex);
  }
  p.directed = all_forward(p.steps);
  return p;
}

std::vector<EdgeIndex> cotree(const DirectedGraph& g, const SpanningTree& tree) {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (!tree.contains(e)) out.push_back(e);
  return out;
}

std::size_t genus(const DirectedGraph& g, EdgeMask subset) {
  UnionFind uf(g.num_vertices());
  std::size_t edges = 0, merges = 0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(subset & edge_bit(e))) continue;
    ++edges;
    if (uf.unite(g.edge(e).tail, g.edge(e).head)) ++merges;
  }
  // #components = |V(S)| - merges, hence |S| - |V(S)| + #components = |S| - merges.
  return edges - merges;
}

template <class S>
std::vector<S> solve_tree_coordinates(const DirectedGraph& g, const SpanningTree& tree, std::span<const S> u) {
  const auto co = cotree(g, tree);
  if (u.size() != co.size())
    throw DomainError("solve_tree_coordinates: expected " + std::to_string(co.size()) + " cotree values");
  if (tree.edges.size() + 1 != g.num_vertices()) throw DomainError("solve_tree_coordinates: not a spanning tree");

  std::vector<S> z(g.num_edges(), S(0));
  for (std::size_t i = 0; i < co.size(); ++i) {
    z[co[i]] = u[i];
  }

  // Root the tree at the cemetery; every other vertex owns the tree edge towards its parent.
  const auto adj = undirected_adjacency(g, tree.mask());
  std::vector<std::optional<EdgeIndex>> parent_edge(g.num_vertices());
  std::vector<VertexId> order;
  std::vector<bool> seen(g.num_vertices(), false);
  std::deque<VertexId> queue{g.cemetery()};
  seen[g.cemetery()] = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (const auto& inc : adj[v]) {
      if (seen[inc.other]) continue;
      seen[inc.other] = true;
      parent_edge[inc.other] = inc.edge;
      queue.push_back(inc.other);
    }
  }
  if (order.size() != g.num_vertices()) throw DomainError("solve_tree_coordinates: tree does not span");

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId x = *it;
    if (x == g.cemetery()) continue;
    const EdgeIndex f = *parent_edge[x];
    S rest(0);
    for (EdgeIndex e : g.out_edges(x))
      if (e != f) rest += z[e];
    for (EdgeIndex e : g.in_edges(x))
      if (e != f) rest -= z[e];
    const S target = x == g.base() ? S(1) : S(0);
    z[f] = g.edge(f).tail == x ? S(target - rest) : S(rest - target);
  }
  return z;
}

template <class S>
TreeChart<S>::TreeChart(const DirectedGraph& g, SpanningTree t)
    : tree(std::move(t)), coordinates(cotree(g, tree)), jacobian(g.num_edges(), coordinates.size()) {
  std::vector<S> u(coordinates.size(), S(0));
  offset = solve_tree_coordinates<S>(g, tree, u);
  for (std::size_t j = 0; j < coordinates.size(); ++j) {
    u[j] = S(1);
    auto z = solve_tree_coordinates<S>(g, tree, u);
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) jacobian(e, j) = z[e] - offset[e];
    u[j] = S(0);
  }
}

template <class S>
std::vector<S> TreeChart<S>::flow(std::span<const S> u) const {
  std::vector<S> z = offset;
  for (std::size_t e = 0; e < z.size(); ++e)
    for (std::size_t j = 0; j < u.size(); ++j) z[e] += jacobian(e, j) * u[j];
  return z;
}

bool is_arrangement_basis(const DirectedGraph& g, EdgeMask subset) {
  const std::size_t d = g.num_edges() - g.transient_vertices().size();
  if (static_cast<std::size_t>(std::popcount(subset)) != d) return false;
  if (d == 0) return true;

  // Any spanning tree gives a chart; take the BFS tree from the cemetery.
  UnionFind uf(g.num_vertices());
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (uf.unite(g.edge(e).tail, g.edge(e).head)) edges.push_back(e);
  const TreeChart<Rational> chart(g, make_spanning_tree(g, edges));

  DenseMatrix<Rational> normals(d, d);
  std::size_t row = 0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(subset & edge_bit(e))) continue;
    for (std::size_t j = 0; j < d; ++j) normals(row, j) = chart.jacobian(e, j);
    ++row;
  }
  return rank(normals) == d;
}

template std::vector<double> solve_tree_coordinates(const DirectedGraph&, const SpanningTree&,
                                                    std::span<const double>);
template std::vector<Rational> solve_tree_coordinates(const DirectedGraph&, const SpanningTree&,
                                                      std::span<const Rational>);
template struct TreeChart<double>;
template struct TreeChart<Rational>;

}  // namespace rwde
