#pragma once

#include <functional>
#include <limits>

#include "rmtlab/ensemble_spec.hpp"

namespace rmtlab {

struct Support {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Analytic nearest-neighbour spacing distribution of one ensemble (A = pi/2).
///
/// Each law is stored as a printed shape times a normalization constant:
///
///   gue, pt_nu_zero, pt_nu_slice   N s^2 e^{-pi s^2/4},                 N = pi/2
///   goe                            N s e^{-pi s^2/4},                   N = pi/2
///   planar                         N s e^{-pi (s^2 - 4 y0^2)/4},        N = pi/2
///   cylinder, cone                 N s / u e^{-pi u^2/4},               N = 1
///                                  with u = sqrt(s^2 - s_min^2)
///   paraboloid                     N s / sqrt(s^2 + 4 a^2) e^{-pi s^2/4},
///                                  N = e^{-pi a^2} / erfc(a sqrt(pi))
///   quartic                        N s / (r sqrt(r - sqrt(q))) e^{-pi s^2/4},
///                                  r = sqrt(s^2 + q), N by quadrature
///   gue_goe_interp                 N (pi/2) eps s e^{-pi s^2/4} int_{-s/2}^{s/2} e^{pi (1-eps^2) y^2} dy,
///                                  N by quadrature (equals 1 analytically)
///   pt_gamma_slice                 N s^2 e^{-pi s^2/4} on [0, 2 gamma0], N from the GUE CDF
///
/// The object is immutable after construction; every method is thread-safe.
class SpacingLaw {
 public:
  /// Validates the spec and computes the normalization (by quadrature where needed).
  explicit SpacingLaw(EnsembleSpec spec);

  const EnsembleSpec& spec() const { return spec_; }
  EnsembleKind kind() const { return spec_.kind; }
  double normalization() const { return normalization_; }
  Support support() const { return support_; }
  /// Finite upper limit used for quadrature; the density beyond it is below 1e-16.
  double tail_limit() const { return tail_; }

  /// Density at s >= 0; zero outside the support, +inf at an integrable singular edge.
  double pdf(double s) const;
  /// Closed form where available, otherwise adaptive quadrature of the pdf.
  double cdf(double s) const;
  bool has_closed_form_cdf() const;
  /// CDF by quadrature of the pdf regardless of whether a closed form exists.
  double cdf_by_quadrature(double s) const;
  /// Mean of s: closed form for gue/goe, quadrature otherwise.
  double mean_spacing() const;

  /// Integral of weight(s) * pdf(s) over [a, b] intersected with the support. Laws with an
  /// inverse-square-root edge are integrated in u = sqrt(s^2 - s_min^2), which removes it.
  double integrate(const std::function<double(double)>& weight, double a, double b) const;
  double integrate_pdf(double a, double b) const;

 private:
  bool singular_edge() const;
  // Printed shape without the normalization constant; requires s inside the support.
  double shape(double s) const;
  double shape_integral(const std::function<double(double)>& weight, double a, double b) const;

  EnsembleSpec spec_;
  Support support_;
  double tail_ = 0.0;
  double normalization_ = 1.0;
  double trunc_mass_ = 1.0;  // GUE CDF at 2 gamma0 for pt_gamma_slice
};

/// The constant multiplying the printed shape so that the pdf integrates to one.
double normalization_constant(const EnsembleSpec& spec);

/// Closed-form GUE spacing CDF erf(sqrt(pi) s / 2) - s e^{-pi s^2/4}.
double gue_cdf(double s);
double gue_pdf(double s);
double goe_pdf(double s);
/// e^{-pi s^2/4}, the rho0 -> 0 limit of the cylinder law.
double half_gaussian_pdf(double s);

}  // namespace rmtlab
