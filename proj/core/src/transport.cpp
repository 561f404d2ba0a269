#include "rwde/transport.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

namespace rwde {

double min_modulus_on_segment(std::complex<double> a, std::complex<double> b) {
  const double bb = std::norm(b);
  double t = bb > 0.0 ? -std::real(a * std::conj(b)) / bb : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * b);
}

namespace {

void check_waypoint(const ConnectionForm& conn, const ComplexVector& lambda, const TransportOptions& o) {
  if (lambda.size() != conn.num_edges) throw MissingEdgeValue("transport: waypoint needs one lambda per edge");
  for (EdgeIndex e = 0; e < lambda.size(); ++e) {
    const bool fixed = std::find(o.zero_edges.begin(), o.zero_edges.end(), e) != o.zero_edges.end();
    if (fixed && lambda[e] != std::complex<double>(0.0))
      throw DomainError("transport: lambda must vanish on edge index " + std::to_string(e));
    if (!fixed && !(lambda[e].real() > 0.0))
      throw DomainError("transport: Re lambda must be positive on edge index " + std::to_string(e));
  }
}

}  // namespace

TransportResult transport(const ConnectionForm& conn, ComplexVector initial,
                          std::span<const ComplexVector> waypoints, const TransportOptions& options) {
  using namespace boost::numeric::odeint;
  using C = std::complex<double>;
  using State = ComplexVector;

  if (initial.size() != conn.basis.size())
    throw MissingEdgeValue("transport: initial vector must have one entry per spanning tree");
  if (waypoints.empty()) throw DomainError("transport: path needs at least one waypoint");
  for (const auto& w : waypoints) check_waypoint(conn, w, options);

  TransportResult result;
  result.value = std::move(initial);
  result.min_locus_distance = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s + 1 < waypoints.size(); ++s) {
    const ComplexVector& from = waypoints[s];
    ComplexVector direction(from.size());
    for (std::size_t e = 0; e < from.size(); ++e) direction[e] = waypoints[s + 1][e] - from[e];

    for (std::size_t k = 0; k < conn.cycle_terms.size(); ++k) {
      const auto& form = conn.cycle_terms[k].form;
      const double d = min_modulus_on_segment(form(std::span<const C>(from)), form(std::span<const C>(direction)));
      result.min_locus_distance = std::min(result.min_locus_distance, d);
      if (d <= options.locus_margin)
        throw ExcludedLocusError("transport: segment " + std::to_string(s) + " meets ker l_C", k);
    }
    if (std::all_of(direction.begin(), direction.end(), [](C c) { return c == C(0); })) continue;

    ComplexVector lambda(from.size());
    auto system = [&](const State& x, State& dxdt, double t) {
      for (std::size_t e = 0; e < from.size(); ++e) lambda[e] = from[e] + t * direction[e];
      const auto a = connection_along(conn, lambda, direction);
      for (std::size_t r = 0; r < x.size(); ++r) {
        C acc(0.0);
        for (std::size_t c = 0; c < x.size(); ++c) acc += a(r, c) * x[c];
        dxdt[r] = -acc;
      }
    };

    auto stepper = make_controlled(options.tol, options.tol, runge_kutta_dopri5<State>());
    double t = 0.0;
    double dt = options.initial_step;
    while (1.0 - t > 1e-14) {
      if (result.steps + result.rejected_steps >= options.max_steps)
        throw TransportError("transport: exceeded " + std::to_string(options.max_steps) + " steps");
      dt = std::min(dt, 1.0 - t);
      if (dt < options.min_step) throw TransportError("transport: step size underflow at t = " + std::to_string(t));
      if (stepper.try_step(system, result.value, t, dt) == success) {
        ++result.steps;
      } else {
        ++result.rejected_steps;
      }
    }
  }
  return result;
}

}  // namespace rwde
