#pragma once

#include <cstdint>
#include <random>

namespace rmtlab {

/// Deterministic generator used by every sampler.
///
/// Uniform and Gaussian variates are derived from the raw 64-bit output of
/// mt19937_64 with fixed algorithms, so a given seed yields the same stream on
/// every standard library (std::normal_distribution is implementation-defined).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1]; safe to take a logarithm of.
  double uniform_open_low();
  /// Standard normal variate (Marsaglia polar method, one cached spare).
  double normal();
  /// Normal variate with the given mean and standard deviation.
  double normal(double mean, double sigma) { return mean + sigma * normal(); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for worker `worker` of a partitioned stream rooted at `seed`.
/// Rule: splitmix64(seed + 0x9E3779B97F4A7C15 * (worker + 1)).
std::uint64_t derive_worker_seed(std::uint64_t seed, std::uint64_t worker);

}  // namespace rmtlab
