#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

namespace rwde {

/// Mean with a 1-sigma standard error, reproducible from (inputs, seed, n_samples).
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Welford accumulator.
class RunningStats {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

  McEstimate estimate(std::uint64_t seed) const { return {mean(), std_error(), n_, seed}; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed category counts against probabilities.
ChiSquareResult chi_square_gof(std::span<const std::size_t> counts, std::span<const double> probabilities);

/// 1/2 sum |p_i - q_i|.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace rwde
