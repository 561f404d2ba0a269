#include "rwde/environment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rwde {
namespace {

template <class S>
DenseMatrix<S> survival_matrix(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  DenseMatrix<S> m = transition_matrix(g, env);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = (i == j ? S(1) : S(0)) - m(i, j);
  return m;
}

template <class S>
DenseMatrix<S> transpose(const DenseMatrix<S>& m) {
  DenseMatrix<S> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

/// Row x0 of the Green function, from one transposed solve.
template <class S>
std::vector<S> green_row(const DirectedGraph& g, const LuDecomposition<S>& lu_transposed) {
  std::vector<S> rhs(g.transient_vertices().size(), S(0));
  rhs[*g.transient_index(g.base())] = S(1);
  return lu_transposed.solve(rhs);
}

template <class S>
std::vector<S> occupation_from_row(const DirectedGraph& g, const BasicEnvironment<S>& env,
                                   const std::vector<S>& row) {
  std::vector<S> z(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) z[e] = row[*g.transient_index(g.edge(e).tail)] * env.p[e];
  return z;
}

void check_lambda(std::span<const double> lambda, std::size_t edges) {
  if (lambda.size() != edges) throw MissingEdgeValue("lambda must have one value per edge");
  for (double l : lambda)
    if (!(l >= 0.0)) throw DomainError("lambda must be componentwise >= 0");
}

/// Per-environment quantities shared by the Monte Carlo estimators.
struct EnvironmentSample {
  Environment env;
  double det = 0.0;
  double laplace_weight = 0.0;  // exp(-<lambda, z>)
};

EnvironmentSample draw(const DirectedGraph& g, const DirichletWeights& w, std::span<const double> lambda,
                       std::uint64_t seed, std::size_t index) {
  SplitMix64 rng = substream(seed, index);
  EnvironmentSample s{sample_environment(g, w, rng)};
  const LuDecomposition<double> lu(transpose(survival_matrix(g, s.env)));
  if (lu.singular()) throw DomainError("I - P_U is singular for a sampled environment");
  s.det = lu.determinant();
  const auto z = occupation_from_row(g, s.env, green_row(g, lu));
  double pairing = 0.0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) pairing += lambda[e] * z[e];
  s.laplace_weight = std::exp(-pairing);
  return s;
}

double tree_weight(const Environment& env, const SpanningTree& tree, double det) {
  double prod = 1.0;
  for (EdgeIndex e : tree.edges) prod *= env.p[e];
  return prod / det;
}

}  // namespace

DirichletWeights DirichletWeights::from_alpha(const DirectedGraph& g, std::vector<double> alpha) {
  if (alpha.size() != g.num_edges()) throw MissingEdgeValue("DirichletWeights: one alpha per edge required");
  DirichletWeights w{std::move(alpha), std::vector<double>(g.num_vertices(), 0.0)};
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(w.alpha[e] > 0.0)) throw DomainError("Dirichlet weight of edge " + g.edge(e).id + " is not positive");
    w.beta[g.edge(e).tail] += w.alpha[e];
  }
  return w;
}

DirichletWeights DirichletWeights::from_graph(const DirectedGraph& g) {
  std::vector<double> alpha;
  for (const auto& e : g.edges()) alpha.push_back(to_double(e.alpha));
  return from_alpha(g, std::move(alpha));
}

template <class S>
void check_environment(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  if (env.p.size() != g.num_edges()) throw MissingEdgeValue("environment must have one probability per edge");
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (!(env.p[e] > S(0) && env.p[e] <= S(1)))
      throw DomainError("p of edge " + g.edge(e).id + " is outside (0, 1]");
  for (VertexId x : g.transient_vertices()) {
    S total(0);
    for (EdgeIndex e : g.out_edges(x)) total += env.p[e];
    bool ok;
    if constexpr (is_exact_v<S>) {
      ok = total == 1;
    } else {
      ok = std::abs(total - 1.0) <= 1e-12;
    }
    if (!ok) throw DomainError("exit probabilities at " + g.vertex_name(x) + " do not sum to one");
  }
}

Environment sample_environment(const DirectedGraph& g, const DirichletWeights& w, SplitMix64& rng) {
  Environment env{std::vector<double>(g.num_edges(), 0.0)};
  for (VertexId x : g.transient_vertices()) {
    const auto out = g.out_edges(x);
    if (out.size() == 1) {
      env.p[out[0]] = 1.0;
      continue;
    }
    double total = 0.0;
    for (EdgeIndex e : out) {
      if (!(w.alpha[e] > 0.0)) throw DomainError("Dirichlet weight of edge " + g.edge(e).id + " is not positive");
      std::gamma_distribution<double> gamma(w.alpha[e], 1.0);
      env.p[e] = gamma(rng);
      total += env.p[e];
    }
    for (EdgeIndex e : out) env.p[e] /= total;
  }
  return env;
}

Environment sample_environment(const DirectedGraph& g, const DirichletWeights& w, std::uint64_t seed) {
  SplitMix64 rng = substream(seed, 0);
  return sample_environment(g, w, rng);
}

Environment mean_environment(const DirectedGraph& g, const DirichletWeights& w) {
  Environment env{std::vector<double>(g.num_edges())};
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) env.p[e] = w.alpha[e] / w.beta[g.edge(e).tail];
  return env;
}

template <class S>
DenseMatrix<S> transition_matrix(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  const std::size_t n = g.transient_vertices().size();
  DenseMatrix<S> p(n, n);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    auto from = g.transient_index(g.edge(e).tail);
    auto to = g.transient_index(g.edge(e).head);
    if (from && to) p(*from, *to) += env.p[e];
  }
  return p;
}

template <class S>
DenseMatrix<S> green_function(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  const LuDecomposition<S> lu(survival_matrix(g, env));
  if (lu.singular()) throw DomainError("I - P_U is singular: the chain is not killed almost surely");
  return lu.inverse();
}

template <class S>
std::vector<S> edge_occupation(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  const LuDecomposition<S> lu(transpose(survival_matrix(g, env)));
  if (lu.singular()) throw DomainError("I - P_U is singular: the chain is not killed almost surely");
  return occupation_from_row(g, env, green_row(g, lu));
}

template <class S>
S survival_determinant(const DirectedGraph& g, const BasicEnvironment<S>& env) {
  return LuDecomposition<S>(survival_matrix(g, env)).determinant();
}

template <class S>
S tree_probability(const DirectedGraph& g, const BasicEnvironment<S>& env, const SpanningTree& tree) {
  if (!is_directed_tree(g, tree.mask()) || tree.edges.size() + 1 != g.num_vertices())
    throw DomainError("tree_probability: tree is not directed towards the cemetery");
  S prod(1);
  for (EdgeIndex e : tree.edges) prod *= env.p[e];
  return S(prod / survival_determinant(g, env));
}

namespace {

EdgeIndex choose_exit(const DirectedGraph& g, const Environment& env, VertexId x, SplitMix64& rng) {
  const auto out = g.out_edges(x);
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  for (EdgeIndex e : out) {
    u -= env.p[e];
    if (u < 0.0) return e;
  }
  // Rounding left u marginally non-negative: take the last edge with positive mass.
  for (auto it = out.rbegin(); it != out.rend(); ++it)
    if (env.p[*it] > 0.0) return *it;
  throw DomainError("vertex " + g.vertex_name(x) + " has no exit probability mass");
}

}  // namespace

Trajectory simulate_chain(const DirectedGraph& g, const Environment& env, SplitMix64& rng, std::size_t max_steps) {
  Trajectory t;
  VertexId x = g.base();
  while (x != g.cemetery()) {
    if (t.edges.size() >= max_steps)
      throw IterationCapExceeded("simulate_chain: no absorption after " + std::to_string(max_steps) + " steps");
    const EdgeIndex e = choose_exit(g, env, x, rng);
    t.edges.push_back(e);
    x = g.edge(e).head;
  }
  return t;
}

Trajectory simulate_chain(const DirectedGraph& g, const Environment& env, std::uint64_t seed, std::size_t max_steps) {
  SplitMix64 rng = substream(seed, 0);
  return simulate_chain(g, env, rng, max_steps);
}

SignedEdgeSet loop_erasure(const DirectedGraph& g, const Trajectory& trajectory) {
  SignedEdgeSet path;
  path.kind = SignedEdgeSet::Kind::Path;
  path.walk = {g.base()};
  std::vector<std::optional<std::size_t>> position(g.num_vertices());
  position[g.base()] = 0;
  for (EdgeIndex e : trajectory.edges) {
    const VertexId next = g.edge(e).head;
    if (auto pos = position[next]) {
      while (path.walk.size() > *pos + 1) {
        position[path.walk.back()].reset();
        path.walk.pop_back();
        path.steps.pop_back();
      }
      continue;
    }
    path.steps.push_back({e, +1});
    path.walk.push_back(next);
    position[next] = path.walk.size() - 1;
  }
  if (path.walk.back() != g.cemetery()) throw DomainError("loop_erasure: trajectory does not end at the cemetery");
  path.directed = true;
  return path;
}

SpanningTree wilson_sample_tree(const DirectedGraph& g, const Environment& env, SplitMix64& rng,
                                std::size_t max_steps) {
  std::vector<bool> in_tree(g.num_vertices(), false);
  std::vector<EdgeIndex> next(g.num_vertices(), 0);
  in_tree[g.cemetery()] = true;
  std::size_t steps = 0;
  // The law of the output does not depend on the order in which roots are
  // processed; starting from the last transient vertex keeps the base's
  // branch from being a plain loop-erased walk of its own.
  const auto transient = g.transient_vertices();
  for (auto it = transient.rbegin(); it != transient.rend(); ++it) {
    VertexId u = *it;
    while (!in_tree[u]) {
      if (++steps > max_steps)
        throw IterationCapExceeded("wilson_sample_tree: no tree after " + std::to_string(max_steps) + " steps");
      next[u] = choose_exit(g, env, u, rng);
      u = g.edge(next[u]).head;
    }
    for (u = *it; !in_tree[u]; u = g.edge(next[u]).head) in_tree[u] = true;
  }
  std::vector<EdgeIndex> edges;
  for (VertexId x : transient) edges.push_back(next[x]);
  return make_spanning_tree(g, std::move(edges));
}

SpanningTree wilson_sample_tree(const DirectedGraph& g, const Environment& env, std::uint64_t seed,
                                std::size_t max_steps) {
  SplitMix64 rng = substream(seed, 0);
  return wilson_sample_tree(g, env, rng, max_steps);
}

McEstimate mc_estimate_rhs(const DirectedGraph& g, const DirichletWeights& w, std::span<const double> lambda,
                           const SpanningTree& tree, std::size_t n, std::uint64_t seed) {
  check_lambda(lambda, g.num_edges());
  if (!is_directed_tree(g, tree.mask())) throw DomainError("mc_estimate_rhs: tree is not directed");
  if (n == 0) throw DomainError("mc_estimate_rhs: no samples");
  RunningStats stats;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = draw(g, w, lambda, seed, i);
    stats.add(s.laplace_weight * tree_weight(s.env, tree, s.det));
  }
  return stats.estimate(seed);
}

McEstimate mc_laplace(const DirectedGraph& g, const DirichletWeights& w, std::span<const double> lambda,
                      std::size_t n, std::uint64_t seed) {
  check_lambda(lambda, g.num_edges());
  if (n == 0) throw DomainError("mc_laplace: no samples");
  RunningStats stats;
  for (std::size_t i = 0; i < n; ++i) stats.add(draw(g, w, lambda, seed, i).laplace_weight);
  return stats.estimate(seed);
}

LaplaceDecomposition mc_laplace_by_tree(const DirectedGraph& g, const DirichletWeights& w,
                                        std::span<const double> lambda, std::size_t n, std::uint64_t seed) {
  check_lambda(lambda, g.num_edges());
  if (n == 0) throw DomainError("mc_laplace_by_tree: no samples");
  LaplaceDecomposition out;
  out.trees = enumerate_spanning_trees(g, true);
  RunningStats total;
  std::vector<RunningStats> per_tree(out.trees.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = draw(g, w, lambda, seed, i);
    total.add(s.laplace_weight);
    for (std::size_t t = 0; t < out.trees.size(); ++t)
      per_tree[t].add(s.laplace_weight * tree_weight(s.env, out.trees[t], s.det));
  }
  out.total = total.estimate(seed);
  for (const auto& st : per_tree) {
    out.per_tree.push_back(st.estimate(seed));
    out.sum_over_trees += st.mean();
  }
  return out;
}

template void check_environment(const DirectedGraph&, const BasicEnvironment<double>&);
template void check_environment(const DirectedGraph&, const BasicEnvironment<Rational>&);
template DenseMatrix<double> transition_matrix(const DirectedGraph&, const BasicEnvironment<double>&);
template DenseMatrix<Rational> transition_matrix(const DirectedGraph&, const BasicEnvironment<Rational>&);
template DenseMatrix<double> green_function(const DirectedGraph&, const BasicEnvironment<double>&);
template DenseMatrix<Rational> green_function(const DirectedGraph&, const BasicEnvironment<Rational>&);
template std::vector<double> edge_occupation(const DirectedGraph&, const BasicEnvironment<double>&);
template std::vector<Rational> edge_occupation(const DirectedGraph&, const BasicEnvironment<Rational>&);
template double survival_determinant(const DirectedGraph&, const BasicEnvironment<double>&);
template Rational survival_determinant(const DirectedGraph&, const BasicEnvironment<Rational>&);
template double tree_probability(const DirectedGraph&, const BasicEnvironment<double>&, const SpanningTree&);
template Rational tree_probability(const DirectedGraph&, const BasicEnvironment<Rational>&, const SpanningTree&);

}  // namespace rwde
