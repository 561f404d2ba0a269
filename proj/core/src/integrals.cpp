#include "rwde/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rwde {

IntegrandSpec make_integrand_spec(DirectedGraph graph, std::vector<double> alpha, std::vector<double> lambda,
                                  SpanningTree tree, std::vector<EdgeIndex> vertex_edges) {
  if (alpha.size() != graph.num_edges()) throw MissingEdgeValue("integrand: one alpha per edge required");
  if (lambda.size() != graph.num_edges()) throw MissingEdgeValue("integrand: one lambda per edge required");
  tree = make_spanning_tree(graph, tree.edges);
  for (EdgeIndex v : vertex_edges) {
    if (v >= graph.num_edges()) throw DomainError("integrand: vertex edge index out of range");
    if (lambda[v] != 0.0) throw DomainError("lambda must vanish on the vertex edge " + graph.edge(v).id);
  }
  return {std::move(graph), std::move(alpha), std::move(lambda), std::move(tree), std::move(vertex_edges)};
}

IntegrandSpec make_hat_spec(const HatGraph& hat, const DirectedGraph& g, std::span<const double> alpha,
                            std::span<const double> lambda, const SpanningTree& hat_tree) {
  if (alpha.size() != g.num_edges() || lambda.size() != g.num_edges())
    throw MissingEdgeValue("hat integrand: alpha and lambda need one value per edge of the base graph");
  return make_integrand_spec(hat.graph, hat.lift_weights(g, alpha), hat.lift_edge_values(lambda), hat_tree,
                             hat.vertex_edge);
}

IntegrandSpec make_hat_spec(const DirectedGraph& g, std::span<const double> alpha, std::span<const double> lambda,
                            const SpanningTree& tree) {
  const HatGraph hat = hat_graph(g);
  return make_hat_spec(hat, g, alpha, lambda, hat.lift_tree(tree));
}

Integrand::Integrand(const IntegrandSpec& spec)
    : alpha_(spec.alpha), lambda_(spec.lambda), chart_(spec.graph, spec.tree) {}

double Integrand::log_value(std::span<const double> u) const {
  constexpr double minus_inf = -std::numeric_limits<double>::infinity();
  for (double x : u)
    if (!(x > 0.0)) return minus_inf;
  const auto z = chart_.flow(u);
  double log = 0.0;
  for (std::size_t e = 0; e < z.size(); ++e) {
    if (!(z[e] > 0.0)) return minus_inf;
    log += alpha_[e] * std::log(z[e]) - lambda_[e] * z[e];
  }
  for (double x : u) log -= std::log(x);
  return log;
}

double Integrand::operator()(std::span<const double> u) const {
  const double log = log_value(u);
  return std::isinf(log) && log < 0 ? 0.0 : std::exp(log);
}

double integrand(const IntegrandSpec& spec, std::span<const double> u) {
  const Integrand f(spec);
  if (u.size() != f.dimension())
    throw MissingEdgeValue("integrand: expected " + std::to_string(f.dimension()) + " cotree coordinates");
  return f(u);
}

std::string to_string(IntegralEstimate::Method method) {
  return method == IntegralEstimate::Method::Quadrature ? "quadrature" : "monte-carlo";
}

IntegralEstimate integrate_quadrature(const IntegrandSpec& spec, double tol) {
  if (!(tol > 0.0)) throw DomainError("integration tolerance must be positive");
  const Integrand f(spec);
  const auto& chart = f.chart();
  const std::size_t d = chart.dimension();
  if (d > kMaxQuadratureDimension)
    throw QuadratureError("flow space of dimension " + std::to_string(d) + " is beyond nested quadrature");

  // z_e(u) > 0 for every edge; cotree rows are the coordinates themselves.
  std::vector<LinearConstraint> constraints;
  for (std::size_t e = 0; e < chart.offset.size(); ++e) {
    LinearConstraint c{chart.offset[e], std::vector<double>(d)};
    bool trivial = true;
    for (std::size_t j = 0; j < d; ++j) {
      c.coeffs[j] = chart.jacobian(e, j);
      trivial = trivial && c.coeffs[j] == 0.0;
    }
    if (trivial && c.offset > 0.0) continue;
    constraints.push_back(std::move(c));
  }
  const std::function<double(std::span<const double>)> g = [&f](std::span<const double> u) { return f(u); };
  const auto r = integrate_polyhedron(d, constraints, g, QuadratureOptions{tol, 0.0, 2000});
  return {r.value, r.error, IntegralEstimate::Method::Quadrature, r.evaluations};
}

IntegralEstimate integrate_mc(const IntegrandSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("integrate_mc: no samples");
  const Integrand f(spec);
  const auto& co = f.chart().coordinates;
  double log_proposal_norm = 0.0;
  for (EdgeIndex e : co) {
    if (!(spec.alpha[e] > 0.0 && spec.lambda[e] > 0.0))
      throw DomainError("integrate_mc: proposal needs alpha > 0 and lambda > 0 on cotree edge " +
                        spec.graph.edge(e).id);
    log_proposal_norm += std::lgamma(spec.alpha[e]) - spec.alpha[e] * std::log(spec.lambda[e]);
  }

  RunningStats stats;
  std::size_t nonzero = 0;
  std::vector<double> u(co.size());
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = substream(seed, i);
    for (std::size_t j = 0; j < co.size(); ++j) {
      std::gamma_distribution<double> gamma(spec.alpha[co[j]], 1.0 / spec.lambda[co[j]]);
      u[j] = gamma(rng);
    }
    // integrand / proposal density: the cotree factors cancel to Gamma(alpha) / lambda^alpha.
    const auto z = f.chart().flow(u);
    double log_w = log_proposal_norm;
    bool inside = true;
    for (std::size_t e = 0; e < z.size() && inside; ++e) {
      if (!(z[e] > 0.0)) inside = false;
      else if (!f.chart().tree.contains(e)) continue;
      else log_w += spec.alpha[e] * std::log(z[e]) - spec.lambda[e] * z[e];
    }
    const double w = inside ? std::exp(log_w) : 0.0;
    if (w != 0.0) ++nonzero;
    stats.add(w);
  }
  if (nonzero == 0) throw DomainError("integrate_mc: every importance weight vanished");
  return {stats.mean(), stats.std_error(), IntegralEstimate::Method::MonteCarlo, n};
}

double constant_C_alpha(const DirectedGraph& g, std::span<const double> alpha) {
  if (alpha.size() != g.num_edges()) throw MissingEdgeValue("constant_C_alpha: one alpha per edge required");
  std::vector<double> beta(g.num_vertices(), 0.0);
  double log = 0.0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    if (!(alpha[e] > 0.0)) throw DomainError("constant_C_alpha: alpha of " + g.edge(e).id + " is not positive");
    beta[g.edge(e).tail] += alpha[e];
    log -= std::lgamma(alpha[e]);
  }
  for (VertexId x : g.transient_vertices()) log += std::lgamma(beta[x]);
  if (log > std::log(std::numeric_limits<double>::max()))
    throw DomainError("constant_C_alpha overflows: log C = " + std::to_string(log));
  return std::exp(log);
}

VerificationReport verify_theorem_2_1(const DirectedGraph& g, const DirichletWeights& w,
                                      std::span<const double> lambda, const SpanningTree& tree, std::size_t n,
                                      std::uint64_t seed, double tol) {
  if (!is_directed_tree(g, tree.mask())) throw DomainError("verify_theorem_2_1: tree must be directed");
  const double c_alpha = constant_C_alpha(g, w.alpha);
  const IntegrandSpec spec = make_hat_spec(g, w.alpha, lambda, tree);

  IntegralEstimate lhs;
  try {
    lhs = integrate_quadrature(spec, tol);
  } catch (const QuadratureError&) {
    lhs = integrate_mc(spec, n, SplitMix64::mix(seed));
  }
  const McEstimate rhs = mc_estimate_rhs(g, w, lambda, tree, n, seed);

  VerificationReport report;
  report.lhs = {c_alpha * lhs.value, c_alpha * lhs.error};
  report.rhs = {rhs.value, rhs.std_error};
  report.lhs_method = to_string(lhs.method);
  report.diff = std::abs(report.lhs.value - report.rhs.value);
  report.threshold = 3.0 * std::hypot(report.lhs.error, report.rhs.error) + 10.0 * tol;
  report.pass = report.diff <= report.threshold;
  return report;
}

template <class S>
S pairing_identity_residual(const DirectedGraph& g, const SpanningTree& tree, std::span<const S> z,
                            std::span<const S> lambda) {
  if (z.size() != g.num_edges() || lambda.size() != g.num_edges())
    throw MissingEdgeValue("pairing identity: z and lambda need one value per edge");
  auto form = [&](const SignedEdgeSet& s) {
    S value(0);
    for (const auto& step : s.steps) value += S(step.sign) * lambda[step.edge];
    return value;
  };
  S residual(0);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) residual += z[e] * lambda[e];
  residual -= form(tree_path(g, tree));
  for (EdgeIndex e : cotree(g, tree)) residual -= z[e] * form(fundamental_cycle(g, tree, e));
  if constexpr (is_exact_v<S>) {
    return abs(residual);
  } else {
    return std::abs(residual);
  }
}

VerificationReport cohomology_identity_check(const IntegrandSpec& spec, EdgeIndex e0, double tol) {
  if (spec.tree.contains(e0)) throw DomainError("cohomology identity: e0 must lie outside the tree");
  const SignedEdgeSet cycle = fundamental_cycle(spec.graph, spec.tree, e0);

  double l_c = 0.0;
  for (const auto& step : cycle.steps) l_c += step.sign * spec.lambda[step.edge];

  IntegrandSpec shifted = spec;
  shifted.alpha[e0] += 1.0;
  const auto lhs = integrate_quadrature(shifted, tol);

  ValueWithError rhs;
  for (const auto& step : cycle.steps) {
    IntegrandSpec exchanged = spec;
    if (step.edge != e0) {
      auto edges = spec.tree.edges;
      std::replace(edges.begin(), edges.end(), step.edge, e0);
      exchanged.tree = make_spanning_tree(spec.graph, std::move(edges));
    }
    const auto term = integrate_quadrature(exchanged, tol);
    const double factor = step.sign * spec.alpha[step.edge];
    rhs.value += factor * term.value;
    rhs.error += std::abs(factor) * term.error;
  }

  VerificationReport report;
  report.lhs = {l_c * lhs.value, std::abs(l_c) * lhs.error};
  report.rhs = rhs;
  report.lhs_method = to_string(IntegralEstimate::Method::Quadrature);
  report.diff = std::abs(report.lhs.value - report.rhs.value);
  report.threshold = 3.0 * (report.lhs.error + report.rhs.error) + 10.0 * tol;
  report.pass = report.diff <= report.threshold;
  return report;
}

template double pairing_identity_residual(const DirectedGraph&, const SpanningTree&, std::span<const double>,
                                          std::span<const double>);
template Rational pairing_identity_residual(const DirectedGraph&, const SpanningTree&, std::span<const Rational>,
                                            std::span<const Rational>);

}  // namespace rwde
