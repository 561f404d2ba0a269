#include "rwde/graph.hpp"

#include <algorithm>
#include <complex>
#include <deque>
#include <set>

namespace rwde {

DirectedGraph::DirectedGraph(std::vector<std::string> vertex_names, std::string_view cemetery, std::string_view base,
                             const std::vector<EdgeSpec>& edges)
    : names_(std::move(vertex_names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw GraphError("duplicate vertex name '" + n + "'");
  if (edges.size() > kMaxEdges) throw GraphError("graphs are limited to 64 edges");

  auto resolve = [&](std::string_view name, std::string_view what) {
    auto v = find_vertex(name);
    if (!v) throw GraphError("unknown " + std::string(what) + " vertex '" + std::string(name) + "'");
    return *v;
  };
  cemetery_ = resolve(cemetery, "cemetery");
  base_ = resolve(base, "base");

  out_.resize(names_.size());
  in_.resize(names_.size());
  edges_.reserve(edges.size());
  for (const auto& spec : edges) {
    Edge e{spec.id, resolve(spec.tail, "tail"), resolve(spec.head, "head"), spec.alpha};
    out_[e.tail].push_back(edges_.size());
    in_[e.head].push_back(edges_.size());
    edges_.push_back(std::move(e));
  }

  transient_pos_.assign(names_.size(), std::nullopt);
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (v == cemetery_) continue;
    transient_pos_[v] = transient_.size();
    transient_.push_back(v);
  }
}

std::optional<VertexId> DirectedGraph::find_vertex(std::string_view name) const {
  for (VertexId v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

std::optional<EdgeIndex> DirectedGraph::find_edge(std::string_view id) const {
  for (EdgeIndex e = 0; e < edges_.size(); ++e)
    if (edges_[e].id == id) return e;
  return std::nullopt;
}

EdgeIndex DirectedGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw GraphError("unknown edge id '" + std::string(id) + "'");
}

std::optional<std::size_t> DirectedGraph::transient_index(VertexId v) const { return transient_pos_.at(v); }

EdgeMask DirectedGraph::all_edges_mask() const {
  return edges_.size() == kMaxEdges ? ~EdgeMask{0} : (edge_bit(edges_.size()) - 1);
}

std::vector<Rational> DirectedGraph::alphas() const {
  std::vector<Rational> a;
  a.reserve(edges_.size());
  for (const auto& e : edges_) a.push_back(e.alpha);
  return a;
}

std::vector<Rational> DirectedGraph::betas() const {
  std::vector<Rational> b(names_.size(), Rational(0));
  for (const auto& e : edges_) b[e.tail] += e.alpha;
  return b;
}

std::string_view to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::LoopEdge: return "loop edge";
    case Violation::Kind::EdgeFromCemetery: return "edge with origin cemetery";
    case Violation::Kind::DuplicateEdgeId: return "duplicate edge id";
    case Violation::Kind::BaseIsCemetery: return "base is the cemetery";
    case Violation::Kind::NoPathToCemetery: return "no directed path to cemetery";
    case Violation::Kind::NotReachableFromBase: return "no directed path from base";
  }
  return "unknown";
}

ValidationReport validate(const DirectedGraph& g) {
  ValidationReport report;
  auto add = [&](Violation::Kind k, std::string msg) { report.violations.push_back({k, std::move(msg)}); };

  if (g.base() == g.cemetery()) add(Violation::Kind::BaseIsCemetery, "base vertex equals the cemetery");

  std::set<std::string_view> ids;
  for (const auto& e : g.edges()) {
    if (e.tail == e.head) add(Violation::Kind::LoopEdge, "edge " + e.id + " is a loop at " + g.vertex_name(e.tail));
    if (e.tail == g.cemetery()) add(Violation::Kind::EdgeFromCemetery, "edge " + e.id + " has origin the cemetery");
    if (!ids.insert(e.id).second) add(Violation::Kind::DuplicateEdgeId, "edge id " + e.id + " is not unique");
  }

  auto reach = [&](VertexId start, bool forward) {
    std::vector<bool> seen(g.num_vertices(), false);
    std::deque<VertexId> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeIndex e : forward ? g.out_edges(v) : g.in_edges(v)) {
        VertexId w = forward ? g.edge(e).head : g.edge(e).tail;
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  };

  const auto to_cemetery = reach(g.cemetery(), false);
  const auto from_base = reach(g.base(), true);
  for (VertexId x : g.transient_vertices()) {
    if (!to_cemetery[x])
      add(Violation::Kind::NoPathToCemetery, "no directed path " + g.vertex_name(x) + "->" + g.vertex_name(g.cemetery()));
    if (!from_base[x])
      add(Violation::Kind::NotReachableFromBase, "no directed path " + g.vertex_name(g.base()) + "->" + g.vertex_name(x));
  }
  return report;
}

void require_valid(const DirectedGraph& g) {
  auto report = validate(g);
  if (report.ok()) return;
  std::string msg = "invalid graph:";
  for (const auto& v : report.violations) msg += " [" + v.message + "]";
  throw GraphError(msg);
}

template <class S>
std::vector<S> divergence(const DirectedGraph& g, std::span<const S> theta) {
  if (theta.size() != g.num_edges())
    throw MissingEdgeValue("divergence: expected " + std::to_string(g.num_edges()) + " edge values, got " +
                           std::to_string(theta.size()));
  std::vector<S> div(g.transient_vertices().size(), S(0));
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (auto t = g.transient_index(edge.tail)) div[*t] += theta[e];
    if (auto h = g.transient_index(edge.head)) div[*h] -= theta[e];
  }
  return div;
}

template <class S>
std::vector<S> edge_vector(const DirectedGraph& g, const std::map<std::string, S>& values) {
  for (const auto& [id, v] : values) (void)g.edge_index(id);
  std::vector<S> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    auto it = values.find(e.id);
    if (it == values.end()) throw MissingEdgeValue("missing value for edge " + e.id);
    out.push_back(it->second);
  }
  return out;
}

template <class S>
std::vector<S> edge_vector(const DirectedGraph& g, const std::map<std::string, S>& values, const S& fallback) {
  for (const auto& [id, v] : values) (void)g.edge_index(id);
  std::vector<S> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    auto it = values.find(e.id);
    out.push_back(it == values.end() ? fallback : it->second);
  }
  return out;
}

template std::vector<double> divergence(const DirectedGraph&, std::span<const double>);
template std::vector<Rational> divergence(const DirectedGraph&, std::span<const Rational>);
template std::vector<double> edge_vector(const DirectedGraph&, const std::map<std::string, double>&);
template std::vector<Rational> edge_vector(const DirectedGraph&, const std::map<std::string, Rational>&);
template std::vector<std::complex<double>> edge_vector(const DirectedGraph&,
                                                       const std::map<std::string, std::complex<double>>&);
template std::vector<double> edge_vector(const DirectedGraph&, const std::map<std::string, double>&, const double&);
template std::vector<Rational> edge_vector(const DirectedGraph&, const std::map<std::string, Rational>&,
                                           const Rational&);
template std::vector<std::complex<double>> edge_vector(const DirectedGraph&,
                                                       const std::map<std::string, std::complex<double>>&,
                                                       const std::complex<double>&);

}  // namespace rwde
