#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/matrix.hpp"

using namespace rmtlab;

namespace {

constexpr double kPi = std::numbers::pi;

bool near(cplx a, cplx b, double tol = 1e-14) { return std::abs(a - b) <= tol; }

bool near(const Matrix2C& a, const Matrix2C& b, double tol = 1e-14) {
  return near(a.m11, b.m11, tol) && near(a.m12, b.m12, tol) && near(a.m21, b.m21, tol) &&
         near(a.m22, b.m22, tol);
}

HermitianParams random_hermitian(Rng& rng, double scale = 10.0) {
  return {scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1),
          scale * (2 * rng.uniform() - 1), scale * (2 * rng.uniform() - 1)};
}

PTParams random_pt(Rng& rng) {
  PTParams p;
  p.e = 4 * rng.uniform() - 2;
  p.gamma = 3 * rng.uniform();
  p.nu = 3 * rng.uniform();
  p.theta = kPi * rng.uniform();
  p.phi = 2 * kPi * rng.uniform();
  p.eta = 2 * kPi * rng.uniform();
  return p;
}

GeneralComplexParams random_general(Rng& rng) {
  GeneralComplexParams g;
  g.e = rng.normal();
  g.eps = rng.normal();
  for (int i = 0; i < 3; ++i) {
    g.X[i] = rng.normal();
    g.R[i] = rng.normal();
  }
  return g;
}

}  // namespace

TEST_CASE("compose_hermitian reproduces the Pauli matrices") {
  const cplx i{0.0, 1.0};
  CHECK(compose_hermitian({0, 0, 0, 1}) == Matrix2C{1.0, 0.0, 0.0, -1.0});
  CHECK(compose_hermitian({0, 1, 0, 0}) == Matrix2C{0.0, 1.0, 1.0, 0.0});
  CHECK(compose_hermitian({0, 0, 1, 0}) == Matrix2C{0.0, -i, i, 0.0});
  CHECK(compose_hermitian({1, 3, -2, 4}) == Matrix2C{5.0, {3.0, 2.0}, {3.0, -2.0}, -3.0});
}

TEST_CASE("compose_hermitian rejects non-finite input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(compose_hermitian({nan, 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(compose_hermitian({0, 0, inf, 0}), InvalidArgument);
}

TEST_CASE("compose_hermitian output is Hermitian") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Matrix2C m = compose_hermitian(random_hermitian(rng));
    CHECK(m == m.adjoint());
  }
}

TEST_CASE("compose_pt examples") {
  CHECK(near(compose_pt({0, 1, 0, 0, 0, 0}), Matrix2C{1.0, 0.0, 0.0, -1.0}));
  CHECK(near(compose_pt({0, 1, 1, kPi / 2, 0, 0}), Matrix2C{0.0, 2.0, 0.0, 0.0}));
  CHECK(near(compose_pt({2, 0, 0, 0.3, 1.7, 2.9}), Matrix2C{2.0, 0.0, 0.0, 2.0}));
  CHECK_THROWS_AS(compose_pt({0, -1, 0, 0, 0, 0}), InvalidArgument);
  CHECK_THROWS_AS(compose_pt({0, 1, -0.5, 0, 0, 0}), InvalidArgument);
}

TEST_CASE("pt_to_general gives orthogonal X and R of the stated lengths") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const PTParams p = random_pt(rng);
    const GeneralComplexParams g = pt_to_general(p);
    const double xx = g.X[0] * g.X[0] + g.X[1] * g.X[1] + g.X[2] * g.X[2];
    const double rr = g.R[0] * g.R[0] + g.R[1] * g.R[1] + g.R[2] * g.R[2];
    const double xr = g.X[0] * g.R[0] + g.X[1] * g.R[1] + g.X[2] * g.R[2];
    CHECK(std::abs(xx - p.gamma * p.gamma) < 1e-12);
    CHECK(std::abs(rr - p.nu * p.nu) < 1e-12);
    CHECK(std::abs(xr) < 1e-12);
    CHECK(g.eps == 0.0);
  }
}

TEST_CASE("pauli_decompose examples") {
  const cplx i{0.0, 1.0};
  const GeneralComplexParams a = pauli_decompose({1.0, 0.0, 0.0, -1.0});
  CHECK(a == GeneralComplexParams{0.0, 0.0, {0, 0, 1}, {0, 0, 0}});

  const GeneralComplexParams b = pauli_decompose({0.0, 2.0, 0.0, 0.0});
  CHECK(b == GeneralComplexParams{0.0, 0.0, {1, 0, 0}, {0, 1, 0}});

  const GeneralComplexParams c = pauli_decompose({i, 0.0, 0.0, i});
  CHECK(c == GeneralComplexParams{0.0, 1.0, {0, 0, 0}, {0, 0, 0}});
}

TEST_CASE("compose and decompose round trip") {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    GeneralComplexParams g;
    g.e = 20 * rng.uniform() - 10;
    g.eps = 20 * rng.uniform() - 10;
    for (int k = 0; k < 3; ++k) {
      g.X[k] = 20 * rng.uniform() - 10;
      g.R[k] = 20 * rng.uniform() - 10;
    }
    const GeneralComplexParams back = pauli_decompose(compose_general(g));
    CHECK(std::abs(back.e - g.e) <= 1e-14 * 10);
    CHECK(std::abs(back.eps - g.eps) <= 1e-14 * 10);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(back.X[k] - g.X[k]) <= 1e-14 * 10);
      CHECK(std::abs(back.R[k] - g.R[k]) <= 1e-14 * 10);
    }
  }
  Rng rng2(9);
  for (int t = 0; t < 1000; ++t) {
    const HermitianParams h = random_hermitian(rng2);
    const GeneralComplexParams back = pauli_decompose(compose_hermitian(h));
    CHECK(back.e == doctest::Approx(h.e).epsilon(1e-15));
    CHECK(std::abs(back.X[0] - h.x) <= 1e-14);
    CHECK(std::abs(back.X[1] - h.y) <= 1e-14);
    CHECK(std::abs(back.X[2] - h.z) <= 1e-14);
    CHECK(back.eps == 0.0);
    CHECK(back.R == Vec3{0, 0, 0});
  }
}

TEST_CASE("eigenpair examples") {
  const Spectrum a = eigenpair({1.0, 0.0, 0.0, -1.0});
  CHECK(a.is_real);
  CHECK(near(a.lambda1, -1.0));
  CHECK(near(a.lambda2, 1.0));
  CHECK(a.spacing == doctest::Approx(2.0));

  const Spectrum b = eigenpair(compose_hermitian({1, 3, 0, 4}));
  CHECK(b.is_real);
  CHECK(near(b.lambda1, -4.0, 1e-13));
  CHECK(near(b.lambda2, 6.0, 1e-13));
  CHECK(b.spacing == doctest::Approx(10.0).epsilon(1e-14));

  const Spectrum c = eigenpair({0.0, 2.0, 0.0, 0.0});
  CHECK(c.lambda1 == c.lambda2);
  CHECK(c.spacing == 0.0);
}

TEST_CASE("eigenpair orders by real part, then imaginary part") {
  const Spectrum s = eigenpair({0.0, 1.0, -1.0, 0.0});  // eigenvalues +-i
  CHECK_FALSE(s.is_real);
  CHECK(near(s.lambda1, cplx{0.0, -1.0}));
  CHECK(near(s.lambda2, cplx{0.0, 1.0}));
  CHECK(s.spacing == doctest::Approx(2.0));
}

TEST_CASE("eigenpair satisfies trace and determinant identities") {
  Rng rng(77);
  for (int t = 0; t < 2000; ++t) {
    const Matrix2C m = compose_general(random_general(rng));
    const Spectrum s = eigenpair(m);
    const double scale = std::max(m.frobenius_norm(), 1.0);
    CHECK(std::abs(s.lambda1 + s.lambda2 - m.trace()) <= 1e-12 * scale);
    CHECK(std::abs(s.lambda1 * s.lambda2 - m.det()) <= 1e-12 * scale * scale);
    CHECK(s.spacing == doctest::Approx(std::abs(s.lambda2 - s.lambda1)).epsilon(1e-15));
  }
}

TEST_CASE("Hermitian spacing equals 2|X|") {
  Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    const HermitianParams h = random_hermitian(rng);
    const double closed = 2.0 * std::sqrt(h.x * h.x + h.y * h.y + h.z * h.z);
    CHECK(hermitian_spacing(h) == doctest::Approx(closed).epsilon(1e-15));
    const Spectrum s = eigenpair(compose_hermitian(h));
    CHECK(s.is_real);
    CHECK(oracle::rel_diff(s.spacing, closed) < 1e-12);
  }
}

TEST_CASE("PT spacing: real pair above the exceptional point, conjugate pair below") {
  Rng rng(8);
  int real_cases = 0;
  int broken_cases = 0;
  for (int t = 0; t < 4000; ++t) {
    const PTParams p = random_pt(rng);
    const Spectrum s = eigenpair(compose_pt(p));
    const double d = p.gamma * p.gamma - p.nu * p.nu;
    if (std::abs(d) < 1e-3) {
      continue;  // too close to the exceptional point for a relative comparison
    }
    if (d > 0) {
      ++real_cases;
      CHECK(oracle::rel_diff(s.spacing, 2.0 * std::sqrt(d)) < 1e-10);
      CHECK(oracle::rel_diff(s.spacing, pt_spacing(p)) < 1e-10);
      CHECK(std::abs(s.lambda1.imag()) < 1e-10);
    } else {
      ++broken_cases;
      CHECK(std::abs(s.lambda1 - std::conj(s.lambda2)) < 1e-10);
      CHECK(oracle::rel_diff(std::abs(s.lambda1.imag()), std::sqrt(-d)) < 1e-10);
      CHECK(s.lambda1.real() == doctest::Approx(p.e).epsilon(1e-10));
    }
  }
  CHECK(real_cases > 1000);
  CHECK(broken_cases > 1000);
}

TEST_CASE("invariants examples") {
  const InvariantSet a = invariants(pauli_decompose(compose_hermitian({0, 0, 0, 1})));
  CHECK(a.c1 == cplx{0.0, 0.0});
  CHECK(a.c2 == cplx{1.0, 0.0});
  CHECK(a.c3 == 1.0);
  CHECK(a.c4 == 0.0);

  const InvariantSet b = invariants(pauli_decompose(compose_pt({0, 2, 1, 0.7, 1.1, 0.4})));
  CHECK(near(b.c2, cplx{3.0, 0.0}, 1e-13));

  const InvariantSet c = invariants({0.0, 0.0, {1, 0, 0}, {1, 0, 0}});
  CHECK(c.c2 == cplx{0.0, 2.0});
}

TEST_CASE("Hermitian invariants are real and C2 equals C3") {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const HermitianParams h = random_hermitian(rng);
    const InvariantSet inv = invariants(pauli_decompose(compose_hermitian(h)));
    CHECK(inv.c1.imag() == 0.0);
    CHECK(inv.c2.imag() == 0.0);
    CHECK(inv.c2.real() == doctest::Approx(inv.c3).epsilon(1e-15));
    CHECK(inv.c3_hermitian == h.y);
  }
}

TEST_CASE("pt_classify examples") {
  CHECK(pt_classify(pauli_decompose(compose_hermitian({1, 2, 3, 4}))) == PtClass::PTReal);
  CHECK(pt_classify(pt_to_general({0, 1, 2, 0.4, 0.2, 1.0})) == PtClass::PTBroken);
  CHECK(pt_classify({0.0, 0.5, {1, 0, 0}, {0, 1, 0}}) == PtClass::NotPT);
  CHECK(pt_classify({0.0, 0.0, {1, 0, 0}, {0.5, 0, 0}}) == PtClass::NotPT);
  // exceptional point gamma == nu counts as real with zero spacing
  const PTParams ep{0, 1, 1, 0.9, 0.3, 2.0};
  CHECK(pt_classify(pt_to_general(ep)) == PtClass::PTReal);
  CHECK(pt_spacing(ep) == 0.0);
  CHECK(std::string(to_string(PtClass::PTBroken)) == "PT-broken");
}

TEST_CASE("random group elements satisfy their defining constraints") {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const Matrix2C u = random_group_element(GroupKind::Unitary2, rng);
    CHECK((u.adjoint() * u - Matrix2C::identity()).max_abs() < 1e-12);

    const Matrix2C o = random_group_element(GroupKind::SpecialOrthogonal2Embedded, rng);
    CHECK(std::abs(o.det() - 1.0) < 1e-12);
    CHECK(o.m11.imag() == 0.0);
    CHECK(o.m12.imag() == 0.0);
    CHECK((o.adjoint() * o - Matrix2C::identity()).max_abs() < 1e-12);

    const Matrix2C g = random_group_element(GroupKind::GL2C, rng);
    CHECK(std::abs(g.det()) > 0.0);
    CHECK(condition_number(g) <= 100.0);
  }
}

TEST_CASE("Haar unitary entries have the expected second moment") {
  // |U_11|^2 is uniform on [0, 1] under Haar measure.
  Rng rng(99);
  const int n = 20000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) {
    sum += std::norm(random_group_element(GroupKind::Unitary2, rng).m11);
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("transform examples") {
  Rng rng(21);
  const Matrix2C m = compose_general(random_general(rng));
  CHECK(near(transform(m, Matrix2C::identity(), TransformMode::Conjugation), m));
  CHECK(near(transform(m, Matrix2C::identity(), TransformMode::Similarity), m));

  for (int t = 0; t < 200; ++t) {
    const Matrix2C h = compose_hermitian(random_hermitian(rng));
    const Matrix2C u = random_group_element(GroupKind::Unitary2, rng);
    const Matrix2C c = transform(h, u, TransformMode::Conjugation);
    CHECK((c - c.adjoint()).max_abs() < 1e-12 * std::max(1.0, h.max_abs()));
  }

  const Matrix2C singular{1.0, 2.0, 2.0, 4.0};
  CHECK_THROWS_AS(transform(m, singular, TransformMode::Similarity), InvalidArgument);
  CHECK_THROWS_AS(inverse(singular), InvalidArgument);
}

TEST_CASE("similarity by GL(2,C) preserves the complex invariants") {
  Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const GeneralComplexParams g = random_general(rng);
    const Matrix2C m = compose_general(g);
    const Matrix2C G = random_group_element(GroupKind::GL2C, rng);
    const InvariantSet before = invariants(g);
    const InvariantSet after = invariants(pauli_decompose(transform(m, G, TransformMode::Similarity)));
    const double f = m.frobenius_norm();
    CHECK(std::abs(after.c1 - before.c1) / std::max(std::abs(before.c1), f) < 1e-10);
    CHECK(std::abs(after.c2 - before.c2) / std::max(std::abs(before.c2), f * f) < 1e-10);
  }
}

TEST_CASE("unitary conjugation preserves all four invariants, rotations preserve y") {
  Rng rng(32);
  for (int t = 0; t < 1000; ++t) {
    const GeneralComplexParams g = random_general(rng);
    const Matrix2C m = compose_general(g);
    const Matrix2C u = random_group_element(GroupKind::Unitary2, rng);
    const InvariantSet before = invariants(g);
    const InvariantSet after = invariants(pauli_decompose(transform(m, u, TransformMode::Conjugation)));
    const double f2 = m.frobenius_norm() * m.frobenius_norm();
    CHECK(std::abs(after.c1 - before.c1) / std::max(std::abs(before.c1), m.frobenius_norm()) < 1e-10);
    CHECK(std::abs(after.c2 - before.c2) / std::max(std::abs(before.c2), f2) < 1e-10);
    CHECK(std::abs(after.c3 - before.c3) / std::max(before.c3, f2) < 1e-10);
    CHECK(std::abs(after.c4 - before.c4) / std::max(before.c4, f2) < 1e-10);

    const HermitianParams h = random_hermitian(rng, 3.0);
    const Matrix2C o = random_group_element(GroupKind::SpecialOrthogonal2Embedded, rng);
    const Matrix2C hm = compose_hermitian(h);
    const InvariantSet rot = invariants(pauli_decompose(transform(hm, o, TransformMode::Conjugation)));
    CHECK(std::abs(rot.c3_hermitian - h.y) / std::max(std::abs(h.y), hm.frobenius_norm()) < 1e-12);
  }
}

TEST_CASE("a reflection flips the sign of y") {
  // O(2) element with det -1 embedded as diag(1, -1) acting on (x, z): y -> -y.
  const Matrix2C reflection{0.0, 1.0, 1.0, 0.0};
  const HermitianParams h{0.3, 1.2, -0.7, 0.4};
  const GeneralComplexParams after =
      pauli_decompose(transform(compose_hermitian(h), reflection, TransformMode::Conjugation));
  CHECK(after.X[1] == doctest::Approx(-h.y));
}

TEST_CASE("condition number of diagonal matrices") {
  CHECK(condition_number({4.0, 0.0, 0.0, 0.5}) == doctest::Approx(8.0));
  CHECK(condition_number(Matrix2C::identity()) == doctest::Approx(1.0));
}
