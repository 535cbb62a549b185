#pragma once

#include <array>
#include <complex>

#include "rmtlab/random.hpp"

namespace rmtlab {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kAbsoluteFloor = 1e-14;

/// Dense 2x2 complex matrix, row-major.
struct Matrix2C {
  cplx m11{}, m12{}, m21{}, m22{};

  static Matrix2C identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx trace() const { return m11 + m22; }
  cplx det() const { return m11 * m22 - m12 * m21; }
  Matrix2C adjoint() const {
    return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
  }
  bool is_finite() const;
  /// Largest entry modulus.
  double max_abs() const;
  double frobenius_norm() const;

  friend Matrix2C operator*(const Matrix2C& a, const Matrix2C& b);
  friend Matrix2C operator+(const Matrix2C& a, const Matrix2C& b);
  friend Matrix2C operator-(const Matrix2C& a, const Matrix2C& b);
  friend bool operator==(const Matrix2C&, const Matrix2C&) = default;
};

/// Hermitian matrix e*I + (x, y, z).sigma.
struct HermitianParams {
  double e = 0.0, x = 0.0, y = 0.0, z = 0.0;
  friend bool operator==(const HermitianParams&, const HermitianParams&) = default;
};

/// General complex matrix (e + i eps) I + (X + i R).sigma.
struct GeneralComplexParams {
  double e = 0.0;
  double eps = 0.0;
  Vec3 X{};
  Vec3 R{};
  friend bool operator==(const GeneralComplexParams&, const GeneralComplexParams&) = default;
};

/// PT-symmetric coordinates: e I + (gamma n_r + i nu sin(eta) n_theta + i nu cos(eta) n_phi).sigma
/// with the spherical frame (n_r, n_theta, n_phi) at polar angle theta and azimuth phi.
struct PTParams {
  double e = 0.0;
  double gamma = 0.0;
  double nu = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double eta = 0.0;
  friend bool operator==(const PTParams&, const PTParams&) = default;
};

struct Spectrum {
  cplx lambda1;
  cplx lambda2;
  bool is_real = false;
  double spacing = 0.0;
};

struct InvariantSet {
  cplx c1;
  cplx c2;
  double c3 = 0.0;            // |X|^2
  double c4 = 0.0;            // |R|^2
  double c3_hermitian = 0.0;  // y, the extra invariant under real rotations
};

enum class PtClass { NotPT, PTReal, PTBroken };

const char* to_string(PtClass c);

Matrix2C compose_hermitian(const HermitianParams& p);
Matrix2C compose_pt(const PTParams& p);
Matrix2C compose_general(const GeneralComplexParams& g);
GeneralComplexParams pauli_decompose(const Matrix2C& m);

/// Closed-form level spacing 2|X| of a Hermitian parametrization.
double hermitian_spacing(const HermitianParams& p);
/// Closed-form level spacing 2 sqrt(|gamma^2 - nu^2|) of a PT parametrization.
double pt_spacing(const PTParams& p);
/// The (X, R) vectors of a PT parametrization.
GeneralComplexParams pt_to_general(const PTParams& p);

/// Roots of lambda^2 - tr(M) lambda + det(M) via the quadratic formula.
/// lambda1 has the smaller real part (ties: smaller imaginary part).
Spectrum eigenpair(const Matrix2C& m, double tol = kDefaultTolerance);

InvariantSet invariants(const GeneralComplexParams& g);

PtClass pt_classify(const GeneralComplexParams& g, double tol = kDefaultTolerance);

enum class GroupKind { Unitary2, SpecialOrthogonal2Embedded, GL2C };
enum class TransformMode { Conjugation, Similarity };

/// Haar unitary, uniform rotation, or an invertible complex matrix with
/// condition number at most 100.
Matrix2C random_group_element(GroupKind kind, Rng& rng);

/// Conjugation: G M G^dagger. Similarity: G M G^-1.
Matrix2C transform(const Matrix2C& m, const Matrix2C& g, TransformMode mode);

Matrix2C inverse(const Matrix2C& m);
/// 2-norm condition number from the closed-form singular values.
double condition_number(const Matrix2C& m);

}  // namespace rmtlab
