#pragma once

// Adaptive Gauss-Kronrod (7, 15) quadrature, globally adaptive in the style
// of QUADPACK's QAG, and a dimension-recursive driver over polyhedra
// {u : offset_k + <coeffs_k, u> >= 0}.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace rwde {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  double rel_tol = 0.0;
  std::size_t max_intervals = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  /// Inner (nested) integrals that stopped at max_intervals before meeting their target.
  std::size_t unconverged_inner = 0;
};

/// Integral over [a, b]; b may be +infinity, handled by u = a + v / (1 - v).
/// Throws QuadratureError when the target is not met within max_intervals.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options);

/// Same, but reports instead of throwing; `converged` tells which.
QuadratureResult integrate_interval_nothrow(const std::function<double(double)>& f, double a, double b,
                                            const QuadratureOptions& options, bool& converged);

/// offset + <coeffs, u> >= 0.
struct LinearConstraint {
  double offset = 0.0;
  std::vector<double> coeffs;
};

inline constexpr std::size_t kMaxQuadratureDimension = 4;

/// Integral of f over the polyhedron cut out by the constraints, nesting one
/// adaptive rule per coordinate (u_0 outermost). Every coordinate must be
/// constrained to be nonnegative; the innermost range is computed exactly,
/// outer ranges use the constraints that bound the projection. A dimension 0
/// polyhedron is a point and returns f at that point (0 if infeasible).
/// Throws QuadratureError for dimension > kMaxQuadratureDimension or when
/// the outermost integral does not converge.
QuadratureResult integrate_polyhedron(std::size_t dimension, std::span<const LinearConstraint> constraints,
                                      const std::function<double(std::span<const double>)>& f,
                                      const QuadratureOptions& options);

}  // namespace rwde
