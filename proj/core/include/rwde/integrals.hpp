#pragma once

// The integrals I_{Delta,T}(lambda) = int_Delta e^{-<lambda,z>} prod_e z_e^{alpha_e} omega_T
// over the positive chamber of the flow space, on a graph or on its hat
// graph, and the identities that relate them to the Dirichlet environment.
//
// omega_T is taken with its positive orientation, so in the cotree chart of
// T the integral is the Lebesgue integral of
//   e^{-<lambda,z(u)>} prod_e z_e(u)^{alpha_e} prod_{e in T^c} u_e^{-1}.

#include "rwde/combinatorics.hpp"
#include "rwde/environment.hpp"
#include "rwde/graph.hpp"
#include "rwde/hat_graph.hpp"
#include "rwde/quadrature.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rwde {

inline constexpr double kDefaultIntegrationTol = 1e-8;

struct IntegrandSpec {
  DirectedGraph graph;
  std::vector<double> alpha;   // per edge; negative on hat vertex edges
  std::vector<double> lambda;  // per edge; zero on hat vertex edges
  SpanningTree tree;
  /// Hat vertex edges of `graph`; empty for an ordinary graph.
  std::vector<EdgeIndex> vertex_edges;
};

/// Checks sizes, that `tree` spans `graph`, and that lambda vanishes on vertex_edges.
IntegrandSpec make_integrand_spec(DirectedGraph graph, std::vector<double> alpha, std::vector<double> lambda,
                                  SpanningTree tree, std::vector<EdgeIndex> vertex_edges = {});

/// Spec on hat_graph(g) for the lift T + {vertex edges} of a tree of G,
/// with alpha-hat = (alpha, -beta) and lambda-hat = (lambda, 0).
IntegrandSpec make_hat_spec(const DirectedGraph& g, std::span<const double> alpha, std::span<const double> lambda,
                            const SpanningTree& tree);
/// Spec on an existing hat graph for any of its spanning trees.
IntegrandSpec make_hat_spec(const HatGraph& hat, const DirectedGraph& g, std::span<const double> alpha,
                            std::span<const double> lambda, const SpanningTree& hat_tree);

/// The integrand in the cotree chart of spec.tree; 0 outside Delta.
class Integrand {
 public:
  explicit Integrand(const IntegrandSpec& spec);

  std::size_t dimension() const { return chart_.dimension(); }
  const TreeChart<double>& chart() const { return chart_; }
  double operator()(std::span<const double> u) const;
  /// log of the integrand; -infinity outside Delta.
  double log_value(std::span<const double> u) const;

 private:
  std::vector<double> alpha_;
  std::vector<double> lambda_;
  TreeChart<double> chart_;
};

/// One-shot evaluation, u ordered as cotree(spec.tree).
double integrand(const IntegrandSpec& spec, std::span<const double> u);

struct IntegralEstimate {
  enum class Method { Quadrature, MonteCarlo };
  double value = 0.0;
  double error = 0.0;
  Method method = Method::Quadrature;
  std::size_t n_evals = 0;
};

std::string to_string(IntegralEstimate::Method method);

/// Nested adaptive Gauss-Kronrod over the cotree coordinates. Throws
/// QuadratureError when dimension > 4 or the target is not met.
IntegralEstimate integrate_quadrature(const IntegrandSpec& spec, double tol = kDefaultIntegrationTol);

/// Importance sampling with u_e ~ Gamma(alpha_e, rate lambda_e) on T^c.
/// Throws DomainError when some alpha_e or lambda_e on T^c is not positive,
/// when n = 0, or when every weight vanishes.
IntegralEstimate integrate_mc(const IntegrandSpec& spec, std::size_t n, std::uint64_t seed);

/// prod_{x in U} Gamma(beta_x) / prod_e Gamma(alpha_e), through lgamma.
/// Throws DomainError for alpha <= 0 or when the result overflows a double.
double constant_C_alpha(const DirectedGraph& g, std::span<const double> alpha);

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

struct VerificationReport {
  ValueWithError lhs;
  ValueWithError rhs;
  double diff = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string lhs_method;
};

/// C_alpha * I-hat_{Delta, T-hat}(lambda) against the Monte Carlo average
/// E[e^{-<lambda,z>} prod_T p_e / det(I - P_U)]. LHS by quadrature, falling
/// back to Monte Carlo when quadrature fails. Passes when
/// |LHS - RHS| <= 3 sqrt(err_L^2 + err_R^2) + 10 tol.
VerificationReport verify_theorem_2_1(const DirectedGraph& g, const DirichletWeights& w,
                                      std::span<const double> lambda, const SpanningTree& tree, std::size_t n,
                                      std::uint64_t seed, double tol = kDefaultIntegrationTol);

/// |<z, lambda> - l_{sigma_T}(lambda) - sum_{e in T^c} z_e l_{C_T^e}(lambda)|, with
/// sigma_T the tree path and C_T^e the fundamental cycles. Zero for every z in
/// the flow space; exactly zero in rational arithmetic.
template <class S>
S pairing_identity_residual(const DirectedGraph& g, const SpanningTree& tree, std::span<const S> z,
                            std::span<const S> lambda);

/// l_C(lambda) int z_{e0} (integrand) omega_T against
/// sum_{e in C} eps_C(e) alpha_e I_{T + e0 - e}, for C the fundamental cycle of e0.
/// Every integral by quadrature; passes at 3 (err_L + err_R) + 10 tol.
VerificationReport cohomology_identity_check(const IntegrandSpec& spec, EdgeIndex e0,
                                             double tol = kDefaultIntegrationTol);

}  // namespace rwde
