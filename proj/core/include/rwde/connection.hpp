#pragma once

// The connection d + Omega acting on vectors indexed by spanning trees,
//   Omega = sum_sigma dl_sigma Omega_sigma + sum_C (dl_C / l_C) Omega_C,
// built exactly over the rationals, with checks of its commutation
// relations and of flatness.
//
// Matrix convention: I is a column vector indexed by TreeBasis and
// dI = -Omega I. Omega_C has row T supported on the trees T + e0 - e, e in C,
// where e0 is the unique edge of C outside T:
//   (Omega_C)[T][T + e0 - e] = eps_C(e0, e) alpha_e.

#include "rwde/combinatorics.hpp"
#include "rwde/graph.hpp"
#include "rwde/sparse_matrix.hpp"

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rwde {

/// lambda -> sum_e coeffs[e] lambda_e with coeffs in {-1, 0, +1}.
struct LinearForm {
  std::vector<int> coeffs;

  template <class S>
  S operator()(std::span<const S> lambda) const {
    S value(0);
    for (std::size_t e = 0; e < coeffs.size(); ++e)
      if (coeffs[e] != 0) value += S(coeffs[e]) * lambda[e];
    return value;
  }
};

LinearForm linear_form(const DirectedGraph& g, const SignedEdgeSet& set);

/// All spanning trees in canonical order, with a lookup by edge mask.
struct TreeBasis {
  std::vector<SpanningTree> trees;
  std::map<EdgeMask, std::size_t> index;

  std::size_t size() const { return trees.size(); }
  std::optional<std::size_t> find(EdgeMask mask) const;
};

TreeBasis tree_basis(const DirectedGraph& g);

using TreeMatrix = SparseMatrix<Rational>;

TreeMatrix omega_cycle(const DirectedGraph& g, const TreeBasis& basis, const SignedEdgeSet& cycle,
                       std::span<const Rational> alpha);
/// Diagonal projector onto the trees that contain the path.
TreeMatrix omega_path(const DirectedGraph& g, const TreeBasis& basis, const SignedEdgeSet& path);

struct ConnectionTerm {
  SignedEdgeSet set;
  LinearForm form;
  TreeMatrix omega;
};

struct ConnectionForm {
  std::size_t num_edges = 0;
  TreeBasis basis;
  std::vector<ConnectionTerm> path_terms;
  std::vector<ConnectionTerm> cycle_terms;
};

ConnectionForm build_connection(const DirectedGraph& g, std::span<const Rational> alpha);
/// Uses the weights stored on the graph's edges.
ConnectionForm build_connection(const DirectedGraph& g);

/// Index of the first cycle with |l_C(lambda)| <= threshold, if any.
template <class S>
std::optional<std::size_t> excluded_cycle(const ConnectionForm& conn, std::span<const S> lambda,
                                          double threshold = 0.0);

/// M_i(lambda) = sum_sigma eps_sigma(i) Omega_sigma + sum_C eps_C(i) / l_C(lambda) Omega_C,
/// one per edge, so that Omega = sum_i M_i dlambda_i. Throws ExcludedLocusError
/// when l_C(lambda) = 0 for some cycle. Instantiated for Rational, double and
/// std::complex<double>.
template <class S>
std::vector<SparseMatrix<S>> connection_coefficients(const ConnectionForm& conn, std::span<const S> lambda);

/// Omega(lambda) contracted with the direction dlambda, as a dense complex matrix.
DenseMatrix<std::complex<double>> connection_along(const ConnectionForm& conn,
                                                   std::span<const std::complex<double>> lambda,
                                                   std::span<const std::complex<double>> dlambda);

struct CommutationCheck {
  std::string family;  // "i" .. "v", "projector-path", "projector-cycle"
  std::string description;
  bool holds = false;
};

struct CommutationReport {
  std::vector<CommutationCheck> checks;

  bool pass() const;
  std::size_t count(const std::string& family) const;
  std::size_t failures() const;
};

/// Every instance of the five commutation families and of the projector
/// identities, in exact arithmetic. "Disjoint" is read as edge-disjoint.
CommutationReport check_commutation(const DirectedGraph& g, std::span<const Rational> alpha);

/// max over samples and i < j of max |[M_i, M_j]| entrywise, exactly.
Rational check_flatness(const ConnectionForm& conn, std::span<const std::vector<Rational>> lambda_samples);

/// Floating-point shadow: max over samples and i < j of
/// max |[M_i, M_j]| / (max |M_i| max |M_j|), 0 when a factor vanishes.
double check_flatness_float(const ConnectionForm& conn, std::span<const std::vector<double>> lambda_samples);

}  // namespace rwde
