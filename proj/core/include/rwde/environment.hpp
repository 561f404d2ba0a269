#pragma once

// Markov chains in a Dirichlet environment: environments, Green function,
// edge occupation, tree probabilities, Wilson sampling and Monte Carlo
// estimators of environment averages.

#include "rwde/combinatorics.hpp"
#include "rwde/graph.hpp"
#include "rwde/linalg.hpp"
#include "rwde/rng.hpp"
#include "rwde/stats.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rwde {

inline constexpr std::size_t kDefaultStepCap = 10'000'000;

struct DirichletWeights {
  std::vector<double> alpha;  // per edge, > 0
  std::vector<double> beta;   // per vertex, sum of alpha over out-edges (0 at the cemetery)

  /// Throws DomainError when some alpha is not positive.
  static DirichletWeights from_alpha(const DirectedGraph& g, std::vector<double> alpha);
  static DirichletWeights from_graph(const DirectedGraph& g);
};

/// Exit probabilities p_e, one per edge; at each transient vertex they sum to one.
template <class S>
struct BasicEnvironment {
  std::vector<S> p;
};
using Environment = BasicEnvironment<double>;
using RationalEnvironment = BasicEnvironment<Rational>;

/// Throws DomainError unless p_e in (0, 1] and the out-sums are 1
/// (exactly for rationals, within 1e-12 for doubles).
template <class S>
void check_environment(const DirectedGraph& g, const BasicEnvironment<S>& env);

/// Independent Dirichlet(alpha_e : tail(e) = x) draws at every x in U, via normalized Gamma(alpha_e, 1) variates.
Environment sample_environment(const DirectedGraph& g, const DirichletWeights& w, SplitMix64& rng);
Environment sample_environment(const DirectedGraph& g, const DirichletWeights& w, std::uint64_t seed);

/// The Dirichlet mean p_e = alpha_e / beta_{tail(e)}.
Environment mean_environment(const DirectedGraph& g, const DirichletWeights& w);

/// P_U(x, y) = sum of p_e over edges x -> y, indexed by transient_index().
template <class S>
DenseMatrix<S> transition_matrix(const DirectedGraph& g, const BasicEnvironment<S>& env);

/// (I - P_U)^{-1}. Throws DomainError when I - P_U is singular.
template <class S>
DenseMatrix<S> green_function(const DirectedGraph& g, const BasicEnvironment<S>& env);

/// z_e = G(x0, tail(e)) p_e, the expected number of crossings of e before absorption.
template <class S>
std::vector<S> edge_occupation(const DirectedGraph& g, const BasicEnvironment<S>& env);

/// det(I - P_U).
template <class S>
S survival_determinant(const DirectedGraph& g, const BasicEnvironment<S>& env);

/// prod_{e in T} p_e / det(I - P_U), for a tree directed towards the cemetery.
template <class S>
S tree_probability(const DirectedGraph& g, const BasicEnvironment<S>& env, const SpanningTree& tree);

struct Trajectory {
  std::vector<EdgeIndex> edges;
  /// T_delta: number of steps until the cemetery is hit.
  std::size_t hitting_time() const { return edges.size(); }
};

/// One run of the chain from the base until the cemetery. Throws IterationCapExceeded past max_steps.
Trajectory simulate_chain(const DirectedGraph& g, const Environment& env, SplitMix64& rng,
                          std::size_t max_steps = kDefaultStepCap);
Trajectory simulate_chain(const DirectedGraph& g, const Environment& env, std::uint64_t seed,
                          std::size_t max_steps = kDefaultStepCap);

/// Chronological loop erasure of a trajectory that starts at the base and ends at the cemetery.
SignedEdgeSet loop_erasure(const DirectedGraph& g, const Trajectory& trajectory);

/// Wilson's algorithm rooted at the cemetery: a directed spanning tree with
/// probability tree_probability(T). Throws IterationCapExceeded past max_steps.
SpanningTree wilson_sample_tree(const DirectedGraph& g, const Environment& env, SplitMix64& rng,
                                std::size_t max_steps = kDefaultStepCap);
SpanningTree wilson_sample_tree(const DirectedGraph& g, const Environment& env, std::uint64_t seed,
                                std::size_t max_steps = kDefaultStepCap);

/// E^(alpha)[ exp(-<lambda, z>) prod_{e in T} p_e / det(I - P_U) ] over n environments.
/// lambda must be componentwise >= 0; T must be directed.
McEstimate mc_estimate_rhs(const DirectedGraph& g, const DirichletWeights& w, std::span<const double> lambda,
                           const SpanningTree& tree, std::size_t n, std::uint64_t seed);

/// E^(alpha)[ exp(-<lambda, z>) ], the Laplace transform of the edge occupation.
McEstimate mc_laplace(const DirectedGraph& g, const DirichletWeights& w, std::span<const double> lambda,
                      std::size_t n, std::uint64_t seed);

/// mc_laplace together with the per-directed-tree estimators computed on the same environments.
struct LaplaceDecomposition {
  McEstimate total;
  std::vector<SpanningTree> trees;
  std::vector<McEstimate> per_tree;
  double sum_over_trees = 0.0;
};
LaplaceDecomposition mc_laplace_by_tree(const DirectedGraph& g, const DirichletWeights& w,
                                        std::span<const double> lambda, std::size_t n, std::uint64_t seed);

}  // namespace rwde
