#include "rwde/stats.hpp"

#include "rwde/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <numeric>

namespace rwde {

ChiSquareResult chi_square_gof(std::span<const std::size_t> counts, std::span<const double> probabilities) {
  if (counts.size() != probabilities.size() || counts.size() < 2)
    throw DomainError("chi_square_gof: need matching counts and probabilities for at least two categories");
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  if (n == 0) throw DomainError("chi_square_gof: no observations");
  ChiSquareResult r;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = n * probabilities[i];
    if (expected <= 0) throw DomainError("chi_square_gof: category with zero expected count");
    const double d = static_cast<double>(counts[i]) - expected;
    r.statistic += d * d / expected;
  }
  r.degrees_of_freedom = counts.size() - 1;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.degrees_of_freedom), 0.5 * r.statistic);
  return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DomainError("total_variation: size mismatch");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace rwde
