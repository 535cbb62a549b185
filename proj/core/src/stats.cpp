#include "rmtlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr std::size_t kDefaultBins = 64;
constexpr double kDefaultRange = 6.0;
constexpr double kMinExpected = 5.0;

class NeumaierSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) {
    throw InvalidArgument("Histogram: need at least two edges");
  }
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw InvalidArgument("Histogram: edges must be strictly increasing");
    }
  }
  counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::uniform(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) {
    throw InvalidArgument("Histogram::uniform: invalid range or bin count");
  }
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  edges.back() = hi;
  return Histogram(std::move(edges));
}

void Histogram::add(double value) {
  ++total_;
  if (value < edges_.front()) {
    ++underflow_;
    return;
  }
  if (!(value < edges_.back())) {
    ++overflow_;
    return;
  }
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  ++counts_[static_cast<std::size_t>(it - edges_.begin()) - 1];
}

void Histogram::add(std::span<const double> values) {
  for (double v : values) {
    add(v);
  }
}

Histogram default_histogram(const SpacingLaw& law) {
  const Support sup = law.support();
  return Histogram::uniform(sup.lo, std::min(sup.lo + kDefaultRange, sup.hi), kDefaultBins);
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
  if (sorted_samples.empty()) {
    throw InvalidArgument("ks_statistic: no samples");
  }
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw InvalidArgument("ks_statistic: samples must be sorted ascending");
  }
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

ChiSquareResult chi_square(const Histogram& h, const SpacingLaw& law) {
  if (h.total() == 0) {
    throw InvalidArgument("chi_square: empty histogram");
  }
  const double n = static_cast<double>(h.total());
  const auto& edges = h.edges();

  struct Cell {
    double observed;
    double expected;
  };
  std::vector<Cell> cells;
  cells.reserve(h.bins() + 2);

  auto cdf_at = [&](double s) { return s <= 0.0 ? 0.0 : law.cdf(s); };
  double prev = cdf_at(edges.front());
  cells.push_back({static_cast<double>(h.underflow()), n * prev});
  for (std::size_t i = 0; i < h.bins(); ++i) {
    const double next = cdf_at(edges[i + 1]);
    cells.push_back({static_cast<double>(h.counts()[i]), n * (next - prev)});
    prev = next;
  }
  cells.push_back({static_cast<double>(h.overflow()), n * (1.0 - prev)});

  std::vector<Cell> merged;
  Cell pending{0.0, 0.0};
  for (const Cell& c : cells) {
    pending.observed += c.observed;
    pending.expected += c.expected;
    if (pending.expected >= kMinExpected) {
      merged.push_back(pending);
      pending = {0.0, 0.0};
    }
  }
  if (pending.observed > 0.0 || pending.expected > 0.0) {
    if (merged.empty()) {
      merged.push_back(pending);
    } else {
      merged.back().observed += pending.observed;
      merged.back().expected += pending.expected;
    }
  }
  if (merged.size() < 2) {
    throw InvalidArgument("chi_square: fewer than two bins after merging (dof 0)");
  }

  ChiSquareResult r;
  for (const Cell& c : merged) {
    if (c.expected <= 0.0) {
      r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = c.observed - c.expected;
    r.statistic += diff * diff / c.expected;
  }
  r.merged_bins = merged.size();
  r.dof = static_cast<int>(merged.size()) - 1;
  return r;
}

double chi_square_threshold(int dof) {
  return dof + 4.0 * std::sqrt(2.0 * dof);
}

Moments moments(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw InvalidArgument("moments: need at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  NeumaierSum sum;
  for (double v : samples) {
    sum.add(v);
  }
  const double mean = sum.value() / n;
  NeumaierSum sq;
  for (double v : samples) {
    const double d = v - mean;
    sq.add(d * d);
  }
  return {mean, sq.value() / (n - 1.0)};
}

}  // namespace rmtlab
