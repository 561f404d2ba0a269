#pragma once

// Parallel transport of dI = -Omega I along piecewise-linear lambda paths.

#include "rwde/connection.hpp"

#include <complex>
#include <span>
#include <vector>

namespace rwde {

using ComplexVector = std::vector<std::complex<double>>;

struct TransportOptions {
  /// Absolute and relative local error target of the 4/5 embedded pair, per unit path parameter.
  double tol = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 1'000'000;
  /// A segment is rejected when some |l_C| drops to this distance of 0 along it.
  double locus_margin = 1e-9;
  /// Edges on which lambda must stay exactly 0 (hat vertex edges); every
  /// other edge needs Re lambda > 0 at each waypoint.
  std::vector<EdgeIndex> zero_edges;
};

struct TransportResult {
  ComplexVector value;
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  /// Smallest |l_C(lambda)| met along the path.
  double min_locus_distance = 0.0;
};

/// Minimum of |a + t b| over t in [0, 1].
double min_modulus_on_segment(std::complex<double> a, std::complex<double> b);

/// Solves I'(t) = -Omega(lambda(t))[lambda'(t)] I(t) segment by segment through
/// the waypoints with an adaptive Dormand-Prince 5(4) stepper. Throws
/// ExcludedLocusError when a segment meets ker l_C, DomainError for a bad
/// waypoint, TransportError on step-size underflow or step-count overflow.
TransportResult transport(const ConnectionForm& conn, ComplexVector initial,
                          std::span<const ComplexVector> waypoints, const TransportOptions& options = {});

}  // namespace rwde
