#pragma once

#include "rwde/errors.hpp"
#include "rwde/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rwde {

using VertexId = std::size_t;
using EdgeIndex = std::size_t;

/// Bit i set iff edge i belongs to the set. Graphs are limited to 64 edges.
using EdgeMask = std::uint64_t;
inline constexpr std::size_t kMaxEdges = 64;

inline constexpr EdgeMask edge_bit(EdgeIndex e) { return EdgeMask{1} << e; }

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
  Rational alpha{1};
};

struct Edge {
  std::string id;
  VertexId tail;
  VertexId head;
  Rational alpha;
};

/// Finite directed multigraph with a cemetery vertex and a base point.
///
/// Construction only checks that names resolve; the standing assumptions of
/// the model (no loops, nothing leaves the cemetery, reachability) are
/// reported by validate() so that a bad input can be diagnosed in full.
/// Edge order is declaration order and is the canonical edge-id order.
class DirectedGraph {
 public:
  DirectedGraph(std::vector<std::string> vertex_names, std::string_view cemetery, std::string_view base,
                const std::vector<EdgeSpec>& edges);

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  VertexId cemetery() const { return cemetery_; }
  VertexId base() const { return base_; }

  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  std::span<const std::string> vertex_names() const { return names_; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  /// Like find_edge but throws GraphError naming the missing id.
  EdgeIndex edge_index(std::string_view id) const;

  /// U = V \ {cemetery}, in declaration order.
  std::span<const VertexId> transient_vertices() const { return transient_; }
  /// Position of v in transient_vertices(); nullopt for the cemetery.
  std::optional<std::size_t> transient_index(VertexId v) const;

  std::span<const EdgeIndex> out_edges(VertexId v) const { return out_.at(v); }
  std::span<const EdgeIndex> in_edges(VertexId v) const { return in_.at(v); }

  EdgeMask all_edges_mask() const;

  std::vector<Rational> alphas() const;
  /// beta_x = sum of alpha over edges leaving x, indexed by VertexId (0 at the cemetery).
  std::vector<Rational> betas() const;

 private:
  std::vector<std::string> names_;
  VertexId cemetery_ = 0;
  VertexId base_ = 0;
  std::vector<Edge> edges_;
  std::vector<VertexId> transient_;
  std::vector<std::optional<std::size_t>> transient_pos_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
};

struct Violation {
  enum class Kind { LoopEdge, EdgeFromCemetery, DuplicateEdgeId, BaseIsCemetery, NoPathToCemetery, NotReachableFromBase };
  Kind kind;
  std::string message;
};

std::string_view to_string(Violation::Kind kind);

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const DirectedGraph& g);

/// Throws GraphError listing every violation unless validate(g) is ok.
void require_valid(const DirectedGraph& g);

/// div(theta)(x) = sum_{tail(e)=x} theta_e - sum_{head(e)=x} theta_e for x in U,
/// returned in transient_vertices() order. Throws MissingEdgeValue when theta
/// does not have one entry per edge.
template <class S>
std::vector<S> divergence(const DirectedGraph& g, std::span<const S> theta);

/// Builds an edge-indexed vector from an id-keyed map; every edge must be present.
template <class S>
std::vector<S> edge_vector(const DirectedGraph& g, const std::map<std::string, S>& values);

/// Same, with `fallback` for absent edges; unknown ids still throw.
template <class S>
std::vector<S> edge_vector(const DirectedGraph& g, const std::map<std::string, S>& values, const S& fallback);

}  // namespace rwde
