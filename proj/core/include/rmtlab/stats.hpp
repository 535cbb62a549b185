#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rmtlab/spacing_law.hpp"

namespace rmtlab {

/// Fixed-edge histogram. Values outside [edges.front(), edges.back()) are tallied in
/// underflow/overflow, so counts + underflow + overflow == total.
class Histogram {
 public:
  explicit Histogram(std::vector<double> edges);
  /// `bins` equal-width bins over [lo, hi).
  static Histogram uniform(double lo, double hi, std::size_t bins);

  void add(double value);
  void add(std::span<const double> values);

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total() const { return total_; }
  std::size_t bins() const { return counts_.size(); }

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
  std::uint64_t total_ = 0;
};

/// Default binning: 64 equal-width bins over [s_min, min(s_min + 6, s_max)].
Histogram default_histogram(const SpacingLaw& law);

/// max_i max(i/n - F(x_i), F(x_i) - (i-1)/n) over ascending samples.
/// Throws InvalidArgument for empty or unsorted input.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic two-sided Kolmogorov critical value for sqrt(n) D at the 0.1% level.
inline constexpr double kKsCritical = 1.95;
/// Asymptotic two-sided critical value for sqrt(n) D at the 1% level.
inline constexpr double kKsCritical1Percent = 1.63;

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  std::size_t merged_bins = 0;
};

/// Pearson statistic of a histogram against the bin probabilities of `law`
/// (CDF differences). Underflow/overflow are treated as open-ended bins, adjacent bins
/// are merged until every expected count is at least 5, dof = merged bins - 1.
/// Throws InvalidArgument when the histogram is empty or fewer than two bins remain.
ChiSquareResult chi_square(const Histogram& h, const SpacingLaw& law);

/// Upper acceptance bound dof + 4 sqrt(2 dof) used by the verification reports.
double chi_square_threshold(int dof);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

/// Mean and unbiased variance with Neumaier-compensated sums. Requires n >= 2.
Moments moments(std::span<const double> samples);

}  // namespace rmtlab
