#include "rmtlab/spacing_law.hpp"

#include <cmath>
#include <numbers>

#include "rmtlab/errors.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/special_functions.hpp"

namespace rmtlab {

namespace {

using std::numbers::pi;
const double kSqrtPi = std::sqrt(pi);

constexpr double kTailWidth = 10.0;

double gauss_quarter(double s) { return std::exp(-0.25 * pi * s * s); }

// int_{-s/2}^{s/2} e^{a y^2} dy times e^{-pi s^2/4}, arranged to stay finite for a > 0.
double interp_inner_weighted(double s, double a) {
  const double t = 0.25 * a * s * s;
  if (std::abs(t) <= 1.0) {
    // s * sum_k t^k / (k! (2k+1))
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
      term *= t / k;
      const double add = term / (2.0 * k + 1.0);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) {
        break;
      }
    }
    return s * sum * gauss_quarter(s);
  }
  if (a > 0.0) {
    // 2 e^{t} F(sqrt(a) s/2) / sqrt(a), with e^{t - pi s^2/4} = e^{-pi eps^2 s^2/4}
    const double ra = std::sqrt(a);
    return 2.0 * dawson(0.5 * ra * s) / ra * std::exp(t - 0.25 * pi * s * s);
  }
  const double rb = std::sqrt(-a);
  return kSqrtPi * std::erf(0.5 * rb * s) / rb * gauss_quarter(s);
}

}  // namespace

double gue_pdf(double s) { return s < 0.0 ? 0.0 : 0.5 * pi * s * s * gauss_quarter(s); }

double goe_pdf(double s) { return s < 0.0 ? 0.0 : 0.5 * pi * s * gauss_quarter(s); }

double half_gaussian_pdf(double s) { return s < 0.0 ? 0.0 : gauss_quarter(s); }

double gue_cdf(double s) {
  if (s <= 0.0) {
    return 0.0;
  }
  return std::erf(0.5 * kSqrtPi * s) - s * gauss_quarter(s);
}

SpacingLaw::SpacingLaw(EnsembleSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  switch (spec_.kind) {
    case EnsembleKind::Planar:
      support_.lo = 2.0 * std::abs(spec_.param("y0"));
      break;
    case EnsembleKind::Cylinder:
      support_.lo = 2.0 * spec_.param("rho0");
      break;
    case EnsembleKind::Cone: {
      const double beta = spec_.param("beta");
      support_.lo = 2.0 * (std::sqrt(beta / (1.0 + beta)) * std::abs(spec_.param("y0")));
      break;
    }
    case EnsembleKind::PtGammaSlice:
      support_.hi = 2.0 * spec_.param("gamma0");
      break;
    default:
      break;
  }
  tail_ = support_.lo + kTailWidth;
  if (spec_.kind == EnsembleKind::GueGoeInterp) {
    // The mixture decays like e^{-pi eps^2 s^2/4} when eps < 1.
    tail_ = kTailWidth / std::min(1.0, spec_.param("eps_interp"));
  }
  tail_ = std::min(tail_, support_.hi);

  switch (spec_.kind) {
    case EnsembleKind::Gue:
    case EnsembleKind::Goe:
    case EnsembleKind::Planar:
    case EnsembleKind::PtNuZero:
    case EnsembleKind::PtNuSlice:
      normalization_ = 0.5 * pi;
      break;
    case EnsembleKind::Cylinder:
    case EnsembleKind::Cone:
      normalization_ = 1.0;
      break;
    case EnsembleKind::Paraboloid:
      normalization_ = 1.0 / erfcx(spec_.param("alpha") * kSqrtPi);
      break;
    case EnsembleKind::PtGammaSlice:
      trunc_mass_ = gue_cdf(support_.hi);
      if (!(trunc_mass_ > 0.0)) {
        throw InvalidArgument("pt_gamma_slice: gamma0 too small to normalize");
      }
      normalization_ = 0.5 * pi / trunc_mass_;
      break;
    case EnsembleKind::Quartic:
    case EnsembleKind::GueGoeInterp: {
      const double mass = shape_integral([](double) { return 1.0; }, support_.lo, tail_);
      normalization_ = 1.0 / mass;
      break;
    }
  }
}

bool SpacingLaw::singular_edge() const {
  return spec_.kind == EnsembleKind::Cylinder || spec_.kind == EnsembleKind::Cone;
}

double SpacingLaw::shape(double s) const {
  switch (spec_.kind) {
    case EnsembleKind::Gue:
    case EnsembleKind::PtNuZero:
    case EnsembleKind::PtNuSlice:
    case EnsembleKind::PtGammaSlice:
      return s * s * gauss_quarter(s);
    case EnsembleKind::Goe:
      return s * gauss_quarter(s);
    case EnsembleKind::Planar: {
      const double lo = support_.lo;
      return s * std::exp(-0.25 * pi * (s - lo) * (s + lo));
    }
    case EnsembleKind::Cylinder:
    case EnsembleKind::Cone: {
      const double lo = support_.lo;
      if (lo == 0.0) {
        return gauss_quarter(s);
      }
      const double u2 = (s - lo) * (s + lo);
      if (u2 <= 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      return s / std::sqrt(u2) * std::exp(-0.25 * pi * u2);
    }
    case EnsembleKind::Paraboloid: {
      const double a = spec_.param("alpha");
      return s / std::sqrt(s * s + 4.0 * a * a) * gauss_quarter(s);
    }
    case EnsembleKind::Quartic: {
      // s / (r sqrt(r - sqrt q)) rewritten as sqrt(r + sqrt q) / r, finite at s = 0.
      const double q = spec_.param("q_curv");
      const double r = std::sqrt(s * s + q);
      return std::sqrt(r + std::sqrt(q)) / r * gauss_quarter(s);
    }
    case EnsembleKind::GueGoeInterp: {
      const double eps = spec_.param("eps_interp");
      const double a = pi * (1.0 - eps) * (1.0 + eps);
      return 0.5 * pi * eps * s * interp_inner_weighted(s, a);
    }
  }
  return 0.0;
}

double SpacingLaw::pdf(double s) const {
  if (!(s >= 0.0)) {
    throw InvalidArgument("pdf: spacing must be non-negative");
  }
  if (s < support_.lo || s > support_.hi) {
    return 0.0;
  }
  return normalization_ * shape(s);
}

bool SpacingLaw::has_closed_form_cdf() const {
  return spec_.kind != EnsembleKind::Quartic && spec_.kind != EnsembleKind::GueGoeInterp;
}

double SpacingLaw::cdf(double s) const {
  if (!(s >= 0.0)) {
    throw InvalidArgument("cdf: spacing must be non-negative");
  }
  if (s <= support_.lo) {
    return 0.0;
  }
  if (s >= support_.hi) {
    return 1.0;
  }
  switch (spec_.kind) {
    case EnsembleKind::Gue:
    case EnsembleKind::PtNuZero:
    case EnsembleKind::PtNuSlice:
      return gue_cdf(s);
    case EnsembleKind::PtGammaSlice:
      return gue_cdf(s) / trunc_mass_;
    case EnsembleKind::Goe:
      return -std::expm1(-0.25 * pi * s * s);
    case EnsembleKind::Planar: {
      const double lo = support_.lo;
      return -std::expm1(-0.25 * pi * (s - lo) * (s + lo));
    }
    case EnsembleKind::Cylinder:
    case EnsembleKind::Cone: {
      const double lo = support_.lo;
      const double u = std::sqrt((s - lo) * (s + lo));
      return std::erf(0.5 * kSqrtPi * u);
    }
    case EnsembleKind::Paraboloid: {
      const double a = spec_.param("alpha");
      const double outer = erfcx(kSqrtPi * std::sqrt(0.25 * s * s + a * a));
      return 1.0 - gauss_quarter(s) * outer / erfcx(a * kSqrtPi);
    }
    case EnsembleKind::Quartic:
    case EnsembleKind::GueGoeInterp:
      return cdf_by_quadrature(s);
  }
  return 0.0;
}

double SpacingLaw::cdf_by_quadrature(double s) const {
  if (!(s >= 0.0)) {
    throw InvalidArgument("cdf: spacing must be non-negative");
  }
  if (s <= support_.lo) {
    return 0.0;
  }
  if (s >= support_.hi) {
    return 1.0;
  }
  return std::min(1.0, integrate_pdf(support_.lo, s));
}

double SpacingLaw::mean_spacing() const {
  switch (spec_.kind) {
    case EnsembleKind::Gue:
    case EnsembleKind::PtNuZero:
    case EnsembleKind::PtNuSlice:
      return 4.0 / pi;
    case EnsembleKind::Goe:
      return 1.0;
    default:
      return integrate([](double s) { return s; }, support_.lo, tail_);
  }
}

double SpacingLaw::shape_integral(const std::function<double(double)>& weight, double a,
                                  double b) const {
  a = std::max(a, support_.lo);
  b = std::min(b, tail_);
  if (!(b > a)) {
    return 0.0;
  }
  if (singular_edge()) {
    const double lo = support_.lo;
    const double ua = std::sqrt((a - lo) * (a + lo));
    const double ub = std::sqrt((b - lo) * (b + lo));
    // shape(s) ds = e^{-pi u^2/4} du
    auto in_u = [&](double u) {
      const double s = std::sqrt(u * u + lo * lo);
      return weight(s) * gauss_quarter(u);
    };
    return rmtlab::integrate(in_u, ua, ub).value;
  }
  return rmtlab::integrate([&](double s) { return weight(s) * shape(s); }, a, b).value;
}

double SpacingLaw::integrate(const std::function<double(double)>& weight, double a,
                             double b) const {
  return normalization_ * shape_integral(weight, a, b);
}

double SpacingLaw::integrate_pdf(double a, double b) const {
  return integrate([](double) { return 1.0; }, a, b);
}

double normalization_constant(const EnsembleSpec& spec) {
  return SpacingLaw(spec).normalization();
}

}  // namespace rmtlab
