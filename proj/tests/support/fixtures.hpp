#pragma once

// Shared graphs, brute-force oracles and random generators for the test suites.

#include "rwde/bundled.hpp"
#include "rwde/combinatorics.hpp"
#include "rwde/connection.hpp"
#include "rwde/environment.hpp"
#include "rwde/graph.hpp"
#include "rwde/rng.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace rwde::test {

inline DirectedGraph bundled(const char* name) { return bundled_graph(name).graph; }
inline DirectedGraph two_edge() { return bundled("two-edge"); }
inline DirectedGraph triangle() { return bundled("triangle"); }
inline DirectedGraph chain() { return bundled("chain"); }
inline DirectedGraph two_diamond() { return bundled("two-diamond"); }

inline DirectedGraph two_edge(const Rational& a1, const Rational& a2) {
  return DirectedGraph({"x0", "delta"}, "delta", "x0", {{"e1", "x0", "delta", a1}, {"e2", "x0", "delta", a2}});
}

inline SpanningTree tree_of(const DirectedGraph& g, std::initializer_list<const char*> ids) {
  std::vector<EdgeIndex> edges;
  for (const char* id : ids) edges.push_back(g.edge_index(id));
  return make_spanning_tree(g, edges);
}

inline EdgeMask mask_of(const DirectedGraph& g, std::initializer_list<const char*> ids) {
  EdgeMask m = 0;
  for (const char* id : ids) m |= edge_bit(g.edge_index(id));
  return m;
}

/// Component count of the undirected subgraph (all vertices, edges in `mask`).
inline std::size_t components(const DirectedGraph& g, EdgeMask mask) {
  std::vector<std::size_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t count = g.num_vertices();
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(mask & edge_bit(e))) continue;
    const auto a = find(g.edge(e).tail), b = find(g.edge(e).head);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

inline bool is_spanning_tree_oracle(const DirectedGraph& g, EdgeMask mask) {
  return static_cast<std::size_t>(std::popcount(mask)) + 1 == g.num_vertices() && components(g, mask) == 1;
}

/// Every transient vertex has exactly one out-edge in the tree.
inline bool is_directed_oracle(const DirectedGraph& g, EdgeMask mask) {
  for (VertexId x : g.transient_vertices()) {
    int out = 0;
    for (EdgeIndex e : g.out_edges(x)) out += (mask >> e) & 1;
    if (out != 1) return false;
  }
  return true;
}

inline std::vector<EdgeMask> spanning_trees_oracle(const DirectedGraph& g, bool directed_only) {
  std::vector<EdgeMask> out;
  for (EdgeMask m = 0; m < (EdgeMask{1} << g.num_edges()); ++m)
    if (is_spanning_tree_oracle(g, m) && (!directed_only || is_directed_oracle(g, m))) out.push_back(m);
  return out;
}

inline std::vector<std::size_t> degrees(const DirectedGraph& g, EdgeMask mask) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (mask & edge_bit(e)) {
      ++deg[g.edge(e).tail];
      ++deg[g.edge(e).head];
    }
  return deg;
}

/// Nonempty connected edge sets in which every touched vertex has degree 2.
inline std::size_t count_cycles_oracle(const DirectedGraph& g) {
  std::size_t n = 0;
  for (EdgeMask m = 1; m < (EdgeMask{1} << g.num_edges()); ++m) {
    const auto deg = degrees(g, m);
    std::size_t touched = 0;
    bool ok = true;
    for (auto d : deg) {
      if (d != 0 && d != 2) ok = false;
      touched += d != 0;
    }
    if (ok && components(g, m) == g.num_vertices() - touched + 1) ++n;
  }
  return n;
}

/// Edge sets forming a simple path base -- cemetery.
inline std::size_t count_paths_oracle(const DirectedGraph& g) {
  std::size_t n = 0;
  for (EdgeMask m = 1; m < (EdgeMask{1} << g.num_edges()); ++m) {
    const auto deg = degrees(g, m);
    bool ok = deg[g.base()] == 1 && deg[g.cemetery()] == 1;
    std::size_t touched = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      touched += deg[v] != 0;
      if (v != g.base() && v != g.cemetery() && deg[v] != 0 && deg[v] != 2) ok = false;
    }
    if (ok && components(g, m) == g.num_vertices() - touched + 1) ++n;
  }
  return n;
}

/// Positive rational with numerator in [1, max_num] and denominator in [1, max_den].
inline Rational random_positive_rational(SplitMix64& rng, int max_num = 7, int max_den = 5) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline std::vector<Rational> random_alpha(const DirectedGraph& g, SplitMix64& rng) {
  std::vector<Rational> a;
  for (std::size_t e = 0; e < g.num_edges(); ++e) a.push_back(random_positive_rational(rng));
  return a;
}

/// Exact environment: positive integer weights normalized at every transient vertex.
inline RationalEnvironment random_rational_environment(const DirectedGraph& g, SplitMix64& rng) {
  std::uniform_int_distribution<int> weight(1, 9);
  RationalEnvironment env{std::vector<Rational>(g.num_edges())};
  for (VertexId x : g.transient_vertices()) {
    Rational total(0);
    for (EdgeIndex e : g.out_edges(x)) {
      env.p[e] = weight(rng);
      total += env.p[e];
    }
    for (EdgeIndex e : g.out_edges(x)) env.p[e] /= total;
  }
  return env;
}

/// Random rational lambda off every hyperplane l_C = 0.
inline std::vector<Rational> random_lambda_off_locus(const ConnectionForm& conn, SplitMix64& rng) {
  while (true) {
    std::vector<Rational> lambda;
    for (std::size_t e = 0; e < conn.num_edges; ++e) lambda.push_back(random_positive_rational(rng, 11, 4));
    if (!excluded_cycle<Rational>(conn, lambda)) return lambda;
  }
}

/// A random graph satisfying every standing assumption, with at most `max_edges`
/// edges and at least one cycle. Drawn by rejection; deterministic in `seed`.
inline DirectedGraph random_valid_graph(std::uint64_t seed, std::size_t max_edges = 8) {
  SplitMix64 rng(seed);
  for (;;) {
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    std::vector<std::string> names{"x0"};
    for (std::size_t i = 0; i < extra; ++i) names.push_back("v" + std::to_string(i + 1));
    names.push_back("delta");
    const std::size_t n = names.size();
    const std::size_t lo = n;  // at least |U| + 1 edges, so some cycle can exist
    if (lo > max_edges) continue;
    const std::size_t m = std::uniform_int_distribution<std::size_t>(lo, max_edges)(rng);
    std::vector<EdgeSpec> edges;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t tail = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      std::size_t head = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
      if (head >= tail) ++head;
      edges.push_back({"e" + std::to_string(k + 1), names[tail], names[head], random_positive_rational(rng)});
    }
    DirectedGraph g(names, "delta", "x0", edges);
    if (validate(g).ok() && !enumerate_cycles(g).empty()) return g;
  }
}

inline std::vector<DirectedGraph> random_valid_graphs(std::size_t count, std::uint64_t seed, std::size_t max_edges = 8) {
  std::vector<DirectedGraph> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_valid_graph(SplitMix64::mix(seed + i), max_edges));
  return out;
}

}  // namespace rwde::test
