#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "rmtlab/ensemble_spec.hpp"
#include "rmtlab/matrix.hpp"
#include "rmtlab/random.hpp"

namespace rmtlab {

/// One draw: the parametrization, the composed matrix and its level spacing.
struct MatrixSample {
  std::variant<HermitianParams, PTParams> params;
  Matrix2C matrix;
  double spacing = 0.0;

  bool is_pt() const { return std::holds_alternative<PTParams>(params); }
};

/// Draws one matrix from the constrained measure of `spec`. Every delta constraint is
/// integrated out analytically, so each kind reduces to independent marginals:
///
///   gue             x, y, z ~ e^{-pi t^2}
///   goe             y = 0
///   planar          y = y0
///   cylinder        (x, z) = rho0 (cos t, sin t), y Gaussian
///   paraboloid      y ~ e^{-pi((|y| + alpha)^2 - alpha^2)}, rho = sqrt(2 alpha |y|)
///   quartic         y ~ e^{-pi(y^4/q + y^2)}, rho = y^2 / sqrt(q)
///   cone            y ~ e^{-pi((1 + beta) y^2 + 2 beta y0 y)}, rho = sqrt(beta) |y + y0|
///   gue_goe_interp  y0 ~ eps e^{-pi eps^2 y0^2}, then planar{y0}
///   pt_nu_zero      gue draw written as PT coordinates with nu = 0
///   pt_nu_slice     s ~ GUE, gamma = sqrt(s^2/4 + nu0^2)
///   pt_gamma_slice  s ~ GUE restricted to s < 2 gamma0, nu = sqrt(gamma0^2 - s^2/4)
///
/// e ~ e^{-pi e^2} throughout; PT angles have theta ~ sin(theta)/2 and phi, eta uniform.
MatrixSample draw(const EnsembleSpec& spec, Rng& rng);

/// n independent draws from a generator seeded with `seed`. Deterministic in (spec, n, seed).
std::vector<MatrixSample> stream(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed);

/// Partitioned stream: worker w produces the contiguous block [w n / k, (w + 1) n / k) from
/// its own generator seeded with derive_worker_seed(seed, w). Deterministic in
/// (spec, n, seed, workers); workers == 1 reproduces stream() exactly.
std::vector<MatrixSample> stream_parallel(const EnsembleSpec& spec, std::size_t n,
                                          std::uint64_t seed, unsigned workers);

/// Spacings of stream(spec, n, seed).
std::vector<double> spacing_stream(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed);

/// Gaussian proposal for rejection sampling.
struct GaussianProposal {
  double mean = 0.0;
  double sigma = 1.0;
  /// Unnormalized log-density -(t - mean)^2 / (2 sigma^2).
  double log_density(double t) const {
    const double z = (t - mean) / sigma;
    return -0.5 * z * z;
  }
};

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
};

/// Exact draw from the density proportional to exp(log_density) by rejection against a
/// Gaussian envelope. Requires log_density(t) <= proposal.log_density(t) + log_bound for
/// all t. Throws DiagnosticsError when the acceptance rate over a window of 10^7
/// proposals falls below 10^-6.
double rejection_sample_density(const std::function<double(double)>& log_density,
                                const GaussianProposal& proposal, double log_bound, Rng& rng,
                                RejectionStats* stats = nullptr);

/// Standard deviation of the marginal e^{-pi t^2}.
inline constexpr double kGaussianSigma = 0.3989422804014327;  // 1 / sqrt(2 pi)

}  // namespace rmtlab
