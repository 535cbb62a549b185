#include "rmtlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "rmtlab/errors.hpp"
#include "rmtlab/spacing_law.hpp"

namespace rmtlab {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;

constexpr std::uint64_t kRejectionWindow = 10'000'000;
constexpr double kMinAcceptance = 1e-6;

// Below this GUE mass under 2 gamma0 the truncated law is sampled with a uniform envelope.
constexpr double kTruncatedDirectMass = 0.01;

double gaussian(Rng& rng) { return rng.normal(0.0, kGaussianSigma); }

MatrixSample hermitian_sample(const HermitianParams& p, double spacing) {
  return {p, compose_hermitian(p), spacing};
}

MatrixSample pt_sample(const PTParams& p, double spacing) {
  return {p, compose_pt(p), spacing};
}

// (x, z) on a circle of radius rho about the y axis.
HermitianParams axial(double e, double rho, double y, Rng& rng) {
  const double t = kTwoPi * rng.uniform();
  return {e, rho * std::cos(t), y, rho * std::sin(t)};
}

// Spacing of a GUE matrix: twice the length of a 3-vector of e^{-pi t^2} Gaussians.
double gue_spacing(Rng& rng) {
  const double x = gaussian(rng);
  const double y = gaussian(rng);
  const double z = gaussian(rng);
  return 2.0 * std::sqrt(x * x + y * y + z * z);
}

double truncated_gue_spacing(double gamma0, Rng& rng) {
  const double cut = 2.0 * gamma0;
  if (gue_cdf(cut) >= kTruncatedDirectMass) {
    for (;;) {
      const double s = gue_spacing(rng);
      if (s < cut) {
        return s;
      }
    }
  }
  // s uniform on [0, cut), accepted with (s/cut)^2 e^{-pi s^2/4} <= 1.
  for (;;) {
    const double s = cut * rng.uniform();
    const double ratio = s / cut;
    if (rng.uniform() < ratio * ratio * std::exp(-0.25 * pi * s * s)) {
      return s;
    }
  }
}

PTParams pt_angles(double e, double gamma, double nu, Rng& rng) {
  PTParams p;
  p.e = e;
  p.gamma = gamma;
  p.nu = nu;
  p.theta = std::acos(1.0 - 2.0 * rng.uniform());
  p.phi = kTwoPi * rng.uniform();
  p.eta = kTwoPi * rng.uniform();
  return p;
}

MatrixSample draw_planar(double e, double y0, Rng& rng) {
  const double x = gaussian(rng);
  const double z = gaussian(rng);
  const double s = 2.0 * std::sqrt((x * x + z * z) + y0 * y0);
  return hermitian_sample({e, x, y0, z}, s);
}

}  // namespace

double rejection_sample_density(const std::function<double(double)>& log_density,
                                const GaussianProposal& proposal, double log_bound, Rng& rng,
                                RejectionStats* stats) {
  if (!(proposal.sigma > 0.0) || !std::isfinite(log_bound)) {
    throw InvalidArgument("rejection_sample_density: invalid proposal");
  }
  for (std::uint64_t tries = 1;; ++tries) {
    const double t = rng.normal(proposal.mean, proposal.sigma);
    const double log_ratio = log_density(t) - proposal.log_density(t) - log_bound;
    if (log_ratio > 1e-12) {
      throw DiagnosticsError("rejection_sample_density: target exceeds envelope");
    }
    if (stats != nullptr) {
      ++stats->proposals;
    }
    if (std::log(rng.uniform_open_low()) <= log_ratio) {
      if (stats != nullptr) {
        ++stats->accepted;
      }
      return t;
    }
    if (tries >= kRejectionWindow) {
      // No acceptance in a full window: rate below 1 / window <= kMinAcceptance.
      static_assert(1.0 / kRejectionWindow <= kMinAcceptance);
      throw DiagnosticsError("rejection_sample_density: acceptance rate below 1e-6");
    }
  }
}

MatrixSample draw(const EnsembleSpec& spec, Rng& rng) {
  const double e = gaussian(rng);
  switch (spec.kind) {
    case EnsembleKind::Gue: {
      const HermitianParams p{e, gaussian(rng), gaussian(rng), gaussian(rng)};
      return hermitian_sample(p, hermitian_spacing(p));
    }
    case EnsembleKind::Goe: {
      const double x = gaussian(rng);
      const double z = gaussian(rng);
      const HermitianParams p{e, x, 0.0, z};
      return hermitian_sample(p, hermitian_spacing(p));
    }
    case EnsembleKind::Planar:
      return draw_planar(e, spec.param("y0"), rng);
    case EnsembleKind::Cylinder: {
      const double rho0 = spec.param("rho0");
      const double y = gaussian(rng);
      return hermitian_sample(axial(e, rho0, y, rng), 2.0 * std::sqrt(rho0 * rho0 + y * y));
    }
    case EnsembleKind::Paraboloid: {
      const double alpha = spec.param("alpha");
      // Envelope e^{-pi y^2}: log target - log envelope = -2 pi alpha |y| <= 0.
      const double y_abs = std::abs(rejection_sample_density(
          [alpha](double y) { return -pi * (y * y + 2.0 * alpha * std::abs(y)); },
          {0.0, kGaussianSigma}, 0.0, rng));
      const double y = rng.coin() ? y_abs : -y_abs;
      const double rho_sq = 2.0 * alpha * y_abs;
      return hermitian_sample(axial(e, std::sqrt(rho_sq), y, rng),
                              2.0 * std::sqrt(rho_sq + y * y));
    }
    case EnsembleKind::Quartic: {
      const double q = spec.param("q_curv");
      // Envelope e^{-pi y^2}: log target - log envelope = -pi y^4 / q <= 0.
      const double y = rejection_sample_density(
          [q](double t) { return -pi * (t * t * t * t / q + t * t); }, {0.0, kGaussianSigma},
          0.0, rng);
      const double rho = y * y / std::sqrt(q);
      return hermitian_sample(axial(e, rho, y, rng), 2.0 * std::sqrt(rho * rho + y * y));
    }
    case EnsembleKind::Cone: {
      const double beta = spec.param("beta");
      const double y0 = spec.param("y0");
      // (1 + beta) y^2 + 2 beta y0 y completes to v^2 with v = sqrt(1 + beta) (y + beta y0 / (1 + beta)),
      // and s^2/4 = v^2 + g^2 y0^2.
      const double v = gaussian(rng);
      const double y = v / std::sqrt(1.0 + beta) - beta * y0 / (1.0 + beta);
      const double gap = std::sqrt(beta / (1.0 + beta)) * std::abs(y0);
      const double rho = std::sqrt(beta) * std::abs(y + y0);
      return hermitian_sample(axial(e, rho, y, rng), 2.0 * std::sqrt(gap * gap + v * v));
    }
    case EnsembleKind::GueGoeInterp: {
      const double eps = spec.param("eps_interp");
      const double y0 = rng.normal(0.0, kGaussianSigma / eps);
      return draw_planar(e, y0, rng);
    }
    case EnsembleKind::PtNuZero: {
      const double x = gaussian(rng);
      const double y = gaussian(rng);
      const double z = gaussian(rng);
      const double gamma = std::sqrt(x * x + y * y + z * z);
      PTParams p;
      p.e = e;
      p.gamma = gamma;
      p.nu = 0.0;
      p.theta = gamma > 0.0 ? std::acos(std::clamp(z / gamma, -1.0, 1.0)) : 0.0;
      p.phi = std::atan2(y, x);
      if (p.phi < 0.0) {
        p.phi += kTwoPi;
      }
      p.eta = kTwoPi * rng.uniform();
      return pt_sample(p, 2.0 * gamma);
    }
    case EnsembleKind::PtNuSlice: {
      const double nu0 = spec.param("nu0");
      const double s = gue_spacing(rng);
      const double gamma = std::sqrt(0.25 * s * s + nu0 * nu0);
      return pt_sample(pt_angles(e, gamma, nu0, rng), s);
    }
    case EnsembleKind::PtGammaSlice: {
      const double gamma0 = spec.param("gamma0");
      const double s = truncated_gue_spacing(gamma0, rng);
      const double half = 0.5 * s;
      const double nu = std::sqrt((gamma0 - half) * (gamma0 + half));
      return pt_sample(pt_angles(e, gamma0, nu, rng), s);
    }
  }
  throw InvalidArgument("draw: unknown ensemble kind");
}

std::vector<MatrixSample> stream(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  std::vector<MatrixSample> out;
  out.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(draw(spec, rng));
  }
  return out;
}

std::vector<MatrixSample> stream_parallel(const EnsembleSpec& spec, std::size_t n,
                                          std::uint64_t seed, unsigned workers) {
  if (workers <= 1) {
    return stream(spec, n, seed);
  }
  spec.validate();
  std::vector<MatrixSample> out(n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    threads.emplace_back([&spec, &out, begin, end, s = derive_worker_seed(seed, w)] {
      Rng rng(s);
      for (std::size_t i = begin; i < end; ++i) {
        out[i] = draw(spec, rng);
      }
    });
  }
  for (auto& t : threads) {
    t.join();
  }
  return out;
}

std::vector<double> spacing_stream(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  std::vector<double> out;
  out.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(draw(spec, rng).spacing);
  }
  return out;
}

}  // namespace rmtlab
