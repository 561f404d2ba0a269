#include "rwde/quadrature.hpp"

#include "rwde/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace rwde {
namespace {

// Kronrod nodes (descending) and weights; Gauss weights belong to the odd nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(centre - dx);
    fv2[j] = f(centre + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double error = std::abs((resk - resg) * half);
  if (resasc != 0.0 && error != 0.0) error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) error = std::max(50.0 * eps * resabs, error);
  if (!std::isfinite(value) || !std::isfinite(error))
    throw QuadratureError("non-finite integrand value on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return {a, b, value, error};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& o,
                          bool& converged) {
  QuadratureResult r;
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b);
  r.value = first.value;
  r.error = first.error;
  r.evaluations = 15;
  panels.push(first);
  auto target = [&] { return std::max(o.abs_tol, o.rel_tol * std::abs(r.value)); };
  converged = true;
  while (r.error > target()) {
    if (panels.size() >= o.max_intervals) {
      converged = false;
      break;
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      converged = false;
      break;
    }
    panels.pop();
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    r.evaluations += 30;
    r.value += left.value + right.value - worst.value;
    r.error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  r.value = 0.0;
  r.error = 0.0;
  while (!panels.empty()) {
    r.value += panels.top().value;
    r.error += panels.top().error;
    panels.pop();
  }
  return r;
}

}  // namespace

QuadratureResult integrate_interval_nothrow(const std::function<double(double)>& f, double a, double b,
                                            const QuadratureOptions& options, bool& converged) {
  if (!(b > a)) {
    converged = true;
    return {};
  }
  if (std::isinf(b)) {
    auto mapped = [&](double v) {
      const double w = 1.0 - v;
      return f(a + v / w) / (w * w);
    };
    return adaptive(mapped, 0.0, 1.0, options, converged);
  }
  return adaptive(f, a, b, options, converged);
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  bool converged = true;
  auto r = integrate_interval_nothrow(f, a, b, options, converged);
  if (!converged)
    throw QuadratureError("adaptive quadrature did not reach tolerance " + std::to_string(options.abs_tol) +
                          " within " + std::to_string(options.max_intervals) + " intervals (error estimate " +
                          std::to_string(r.error) + ")");
  return r;
}

namespace {

class PolyhedronIntegrator {
 public:
  PolyhedronIntegrator(std::size_t d, std::span<const LinearConstraint> constraints,
                       const std::function<double(std::span<const double>)>& f, const QuadratureOptions& o)
      : d_(d), constraints_(constraints), f_(f), outer_(o), point_(d, 0.0) {
    inner_ = o;
    inner_.abs_tol = o.abs_tol * 1e-3;
    inner_.rel_tol = std::max(o.rel_tol * 1e-2, 1e-12);
  }

  QuadratureResult run() {
    bool converged = true;
    auto r = level(0, converged);
    r.evaluations = evaluations_;
    r.unconverged_inner = unconverged_;
    if (!converged)
      throw QuadratureError("polyhedral quadrature did not reach tolerance " + std::to_string(outer_.abs_tol) +
                            " (error estimate " + std::to_string(r.error) + ")");
    return r;
  }

 private:
  /// Range of coordinate k given point_[0..k-1], from the constraints that
  /// cannot be rescued by later (nonnegative) coordinates.
  bool range(std::size_t k, double& lo, double& hi) const {
    lo = -std::numeric_limits<double>::infinity();
    hi = std::numeric_limits<double>::infinity();
    for (const auto& c : constraints_) {
      bool usable = true;
      for (std::size_t j = k + 1; j < d_ && usable; ++j) usable = c.coeffs[j] <= 0.0;
      if (!usable) continue;
      double rest = c.offset;
      for (std::size_t j = 0; j < k; ++j) rest += c.coeffs[j] * point_[j];
      const double ck = c.coeffs[k];
      if (ck > 0.0) {
        lo = std::max(lo, -rest / ck);
      } else if (ck < 0.0) {
        hi = std::min(hi, -rest / ck);
      } else if (rest < 0.0) {
        return false;
      }
    }
    if (std::isinf(lo)) throw QuadratureError("coordinate " + std::to_string(k) + " has no finite lower bound");
    return lo < hi;
  }

  QuadratureResult level(std::size_t k, bool& converged) {
    double lo = 0.0, hi = 0.0;
    if (!range(k, lo, hi)) return {};
    const bool innermost = k + 1 == d_;
    std::function<double(double)> g = [&, k, innermost](double x) {
      point_[k] = x;
      if (innermost) {
        ++evaluations_;
        return f_(point_);
      }
      bool inner_ok = true;
      const double v = level(k + 1, inner_ok).value;
      if (!inner_ok) ++unconverged_;
      return v;
    };
    return integrate_interval_nothrow(g, lo, hi, k == 0 ? outer_ : inner_, converged);
  }

  std::size_t d_;
  std::span<const LinearConstraint> constraints_;
  const std::function<double(std::span<const double>)>& f_;
  QuadratureOptions outer_, inner_;
  std::vector<double> point_;
  std::size_t evaluations_ = 0;
  std::size_t unconverged_ = 0;
};

}  // namespace

QuadratureResult integrate_polyhedron(std::size_t dimension, std::span<const LinearConstraint> constraints,
                                      const std::function<double(std::span<const double>)>& f,
                                      const QuadratureOptions& options) {
  if (dimension > kMaxQuadratureDimension)
    throw QuadratureError("quadrature dimension " + std::to_string(dimension) + " exceeds " +
                          std::to_string(kMaxQuadratureDimension));
  for (const auto& c : constraints)
    if (c.coeffs.size() != dimension) throw QuadratureError("constraint has the wrong number of coefficients");
  if (dimension == 0) {
    QuadratureResult r;
    r.value = f(std::span<const double>{});
    r.evaluations = 1;
    return r;
  }
  return PolyhedronIntegrator(dimension, constraints, f, options).run();
}

}  // namespace rwde
