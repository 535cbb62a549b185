#include "rmtlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(double v) { return std::isfinite(v); }
bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Conditions above this are treated as numerically singular.
constexpr double kSingularCondition = 1e15;

}  // namespace

bool Matrix2C::is_finite() const {
  return finite(m11) && finite(m12) && finite(m21) && finite(m22);
}

double Matrix2C::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

double Matrix2C::frobenius_norm() const {
  return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
}

Matrix2C operator*(const Matrix2C& a, const Matrix2C& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Matrix2C operator+(const Matrix2C& a, const Matrix2C& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Matrix2C operator-(const Matrix2C& a, const Matrix2C& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

const char* to_string(PtClass c) {
  switch (c) {
    case PtClass::NotPT:
      return "not-PT";
    case PtClass::PTReal:
      return "PT-real";
    case PtClass::PTBroken:
      return "PT-broken";
  }
  return "unknown";
}

Matrix2C compose_general(const GeneralComplexParams& g) {
  const cplx c0{g.e, g.eps};
  const cplx cx{g.X[0], g.R[0]};
  const cplx cy{g.X[1], g.R[1]};
  const cplx cz{g.X[2], g.R[2]};
  return {c0 + cz, cx - kI * cy, cx + kI * cy, c0 - cz};
}

Matrix2C compose_hermitian(const HermitianParams& p) {
  if (!finite(p.e) || !finite(p.x) || !finite(p.y) || !finite(p.z)) {
    throw InvalidArgument("compose_hermitian: non-finite parameter");
  }
  // Written out so the diagonal is exactly real and m21 is exactly conj(m12).
  return {cplx{p.e + p.z, 0.0}, cplx{p.x, -p.y}, cplx{p.x, p.y}, cplx{p.e - p.z, 0.0}};
}

GeneralComplexParams pt_to_general(const PTParams& p) {
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  const double se = std::sin(p.eta);
  const double ce = std::cos(p.eta);

  const Vec3 n_r{st * cp, st * sp, ct};
  const Vec3 n_theta{ct * cp, ct * sp, -st};
  const Vec3 n_phi{-sp, cp, 0.0};

  GeneralComplexParams g;
  g.e = p.e;
  for (int k = 0; k < 3; ++k) {
    g.X[k] = p.gamma * n_r[k];
    g.R[k] = p.nu * (se * n_theta[k] + ce * n_phi[k]);
  }
  return g;
}

Matrix2C compose_pt(const PTParams& p) {
  if (!(p.gamma >= 0.0) || !(p.nu >= 0.0)) {
    throw InvalidArgument("compose_pt: gamma and nu must be non-negative");
  }
  if (!finite(p.e) || !finite(p.gamma) || !finite(p.nu) || !finite(p.theta) ||
      !finite(p.phi) || !finite(p.eta)) {
    throw InvalidArgument("compose_pt: non-finite parameter");
  }
  return compose_general(pt_to_general(p));
}

GeneralComplexParams pauli_decompose(const Matrix2C& m) {
  if (!m.is_finite()) {
    throw InvalidArgument("pauli_decompose: non-finite entry");
  }
  const cplx c0 = 0.5 * (m.m11 + m.m22);
  const cplx cz = 0.5 * (m.m11 - m.m22);
  const cplx cx = 0.5 * (m.m12 + m.m21);
  const cplx cy = 0.5 * kI * (m.m12 - m.m21);
  GeneralComplexParams g;
  g.e = c0.real();
  g.eps = c0.imag();
  g.X = {cx.real(), cy.real(), cz.real()};
  g.R = {cx.imag(), cy.imag(), cz.imag()};
  return g;
}

double hermitian_spacing(const HermitianParams& p) {
  return 2.0 * std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
}

double pt_spacing(const PTParams& p) {
  return 2.0 * std::sqrt(std::abs((p.gamma - p.nu) * (p.gamma + p.nu)));
}

Spectrum eigenpair(const Matrix2C& m, double tol) {
  if (!m.is_finite()) {
    throw InvalidArgument("eigenpair: non-finite entry");
  }
  if (!(tol > 0.0)) {
    throw InvalidArgument("eigenpair: tolerance must be positive");
  }
  // lambda = mean +- sqrt(half_diff^2 + m12 m21); avoids the tr^2/4 - det cancellation.
  const cplx mean = 0.5 * (m.m11 + m.m22);
  const cplx half_diff = 0.5 * (m.m11 - m.m22);
  const cplx root = std::sqrt(half_diff * half_diff + m.m12 * m.m21);

  cplx a = mean - root;
  cplx b = mean + root;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  const double re_gap = a.real() - b.real();
  if (re_gap > tol * scale ||
      (std::abs(re_gap) <= tol * scale && a.imag() > b.imag())) {
    std::swap(a, b);
  }

  Spectrum s;
  s.lambda1 = a;
  s.lambda2 = b;
  s.is_real = std::abs(a.imag()) < tol && std::abs(b.imag()) < tol;
  s.spacing = 2.0 * std::abs(root);
  return s;
}

InvariantSet invariants(const GeneralComplexParams& g) {
  InvariantSet inv;
  const double xx = dot(g.X, g.X);
  const double rr = dot(g.R, g.R);
  inv.c1 = {g.e, g.eps};
  inv.c2 = {xx - rr, 2.0 * dot(g.X, g.R)};
  inv.c3 = xx;
  inv.c4 = rr;
  inv.c3_hermitian = g.X[1];
  return inv;
}

PtClass pt_classify(const GeneralComplexParams& g, double tol) {
  const double xx = dot(g.X, g.X);
  const double rr = dot(g.R, g.R);
  const double xr = dot(g.X, g.R);
  if (std::abs(g.eps) > tol || std::abs(xr) > tol * std::max(1.0, std::sqrt(xx * rr))) {
    return PtClass::NotPT;
  }
  // The exceptional point |X| = |R| belongs to the real-spectrum side.
  return (xx - rr >= -tol * std::max(1.0, xx + rr)) ? PtClass::PTReal : PtClass::PTBroken;
}

double condition_number(const Matrix2C& m) {
  const double f2 = std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) + std::norm(m.m22);
  const double d = std::abs(m.det());
  if (d == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double disc = std::max(0.0, f2 * f2 - 4.0 * d * d);
  const double s1_sq = 0.5 * (f2 + std::sqrt(disc));
  return s1_sq / d;
}

Matrix2C inverse(const Matrix2C& m) {
  if (!(condition_number(m) < kSingularCondition)) {
    throw InvalidArgument("inverse: matrix is singular");
  }
  const cplx inv_det = 1.0 / m.det();
  return {m.m22 * inv_det, -m.m12 * inv_det, -m.m21 * inv_det, m.m11 * inv_det};
}

Matrix2C random_group_element(GroupKind kind, Rng& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (kind) {
    case GroupKind::Unitary2: {
      double g[4];
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& v : g) {
          v = rng.normal();
          norm += v * v;
        }
      } while (norm == 0.0);
      norm = std::sqrt(norm);
      const cplx a{g[0] / norm, g[1] / norm};
      const cplx b{g[2] / norm, g[3] / norm};
      const cplx phase = std::polar(1.0, two_pi * rng.uniform());
      return {phase * a, -phase * std::conj(b), phase * b, phase * std::conj(a)};
    }
    case GroupKind::SpecialOrthogonal2Embedded: {
      const double angle = two_pi * rng.uniform();
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      return {c, -s, s, c};
    }
    case GroupKind::GL2C: {
      for (;;) {
        Matrix2C g{cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()},
                   cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()}};
        if (condition_number(g) <= 100.0) {
          return g;
        }
      }
    }
  }
  throw InvalidArgument("random_group_element: unknown group kind");
}

Matrix2C transform(const Matrix2C& m, const Matrix2C& g, TransformMode mode) {
  if (!(condition_number(g) < kSingularCondition)) {
    throw InvalidArgument("transform: group element is singular");
  }
  switch (mode) {
    case TransformMode::Conjugation:
      return g * m * g.adjoint();
    case TransformMode::Similarity:
      return g * m * inverse(g);
  }
  throw InvalidArgument("transform: unknown mode");
}

}  // namespace rmtlab
