#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "support.hpp"
#include "swp/errors.hpp"
#include "swp/loophole.hpp"
#include "swp/quantum_core.hpp"

using namespace swp;
using swp::testing::max_abs_diff;

namespace {

Vector4 basis(int k) {
  Vector4 v = Vector4::Zero();
  v(k) = 1.0;
  return v;
}

Vector4 bell_phi_plus() {
  Vector4 v = Vector4::Zero();
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

// eigenvalues via characteristic-polynomial-free route: power of the
// complex matrix through Eigen's generic solver, independent of the
// Hermitian solver used by the library
double brute_negativity(const Matrix4& rho) {
  Matrix4 pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  Eigen::ComplexEigenSolver<Matrix4> es(pt);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double l = es.eigenvalues()(i).real();
    if (l < 0) s -= l;
  }
  return s;
}

}  // namespace

TEST_CASE("pauli tensors") {
  const Matrix4 zz = pauli_tensor({Pauli::Z, Pauli::Z});
  CHECK((zz * basis(0) - basis(0)).norm() < 1e-15);
  CHECK(std::abs(pauli_tensor({Pauli::X, Pauli::X}).trace()) < 1e-15);
  CHECK(max_abs_diff(pauli_tensor({Pauli::I, Pauli::I}), Matrix4::Identity()) == 0.0);
  CHECK(PauliObservable{Pauli::Y, Pauli::Z}.label() == "YZ");
  CHECK(pauli_from_char('X') == Pauli::X);
  CHECK_THROWS_AS(pauli_from_char('Q'), std::invalid_argument);
}

TEST_CASE("eigenbasis") {
  SUBCASE("ZZ is the computational basis") {
    const MeasurementBasis b = eigenbasis({Pauli::Z, Pauli::Z});
    for (int k = 0; k < 4; ++k) CHECK(max_abs_diff(b.projectors[k], basis(k) * basis(k).adjoint()) < 1e-15);
    CHECK(b.eigenvalues == std::array<double, 4>{1, -1, -1, 1});
  }
  SUBCASE("XX projects onto |++>, |+->, |-+>, |-->") {
    const MeasurementBasis b = eigenbasis({Pauli::X, Pauli::X});
    Vector4 pp = Vector4::Constant(0.5);
    CHECK(max_abs_diff(b.projectors[0], pp * pp.adjoint()) < 1e-15);
    Vector4 mm(0.5, -0.5, -0.5, 0.5);
    CHECK(max_abs_diff(b.projectors[3], mm * mm.adjoint()) < 1e-15);
  }
  SUBCASE("all nine: complete, orthogonal, idempotent, consistent eigenvalues") {
    for (Pauli l : {Pauli::X, Pauli::Y, Pauli::Z})
      for (Pauli r : {Pauli::X, Pauli::Y, Pauli::Z}) {
        const MeasurementBasis b = eigenbasis({l, r});
        Matrix4 sum = Matrix4::Zero();
        Matrix4 spectral = Matrix4::Zero();
        for (int i = 0; i < 4; ++i) {
          sum += b.projectors[i];
          spectral += b.eigenvalues[i] * b.projectors[i];
          CHECK(max_abs_diff(b.projectors[i] * b.projectors[i], b.projectors[i]) < 1e-10);
          for (int j = i + 1; j < 4; ++j) CHECK((b.projectors[i] * b.projectors[j]).norm() < 1e-10);
        }
        CHECK(max_abs_diff(sum, Matrix4::Identity()) < 1e-10);
        CHECK(max_abs_diff(spectral, pauli_tensor({l, r})) < 1e-10);
      }
  }
  CHECK_THROWS_AS(eigenbasis({Pauli::I, Pauli::Z}), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
  CHECK(DensityMatrix().purity() == doctest::Approx(0.25));
  Matrix4 bad = Matrix4::Identity() / 2.0;
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidState);
  Matrix4 neg = Matrix4::Zero();
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix{neg}, InvalidState);
  Matrix4 nonherm = Matrix4::Identity() / 4.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, InvalidState);
  CHECK(check_state(Matrix4::Identity() / 4.0).ok());
}

TEST_CASE("expectation") {
  CHECK(std::abs(expectation(DensityMatrix(), PauliObservable{Pauli::X, Pauli::Z})) < 1e-15);
  CHECK(expectation(DensityMatrix::pure(basis(0)), PauliObservable{Pauli::Z, Pauli::Z}) == doctest::Approx(1.0));

  // direct element-wise trace on the printed loophole state
  const DensityMatrix rho(printed_loophole_state() / printed_loophole_state().trace().real(),
                          StateTolerance{2e-3, 1e-10, -2e-3});
  const Matrix4 xx = pauli_tensor({Pauli::X, Pauli::X});
  Complex direct = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) direct += rho(i, j) * xx(j, i);
  CHECK(expectation(rho, PauliObservable{Pauli::X, Pauli::X}) == doctest::Approx(direct.real()).epsilon(1e-12));
}

TEST_CASE("partial transpose") {
  swp::Rng rng(11);
  SUBCASE("product state keeps positivity") {
    const Vector4 v = swp::testing::product(swp::testing::haar_qubit(rng), swp::testing::haar_qubit(rng));
    const HermitianEigen e = hermitian_eigen(partial_transpose(v * v.adjoint()));
    CHECK(e.values.minCoeff() > -1e-12);
  }
  SUBCASE("Bell state") {
    const Vector4 b = bell_phi_plus();
    const HermitianEigen e = hermitian_eigen(partial_transpose(b * b.adjoint()));
    CHECK(e.values(0) == doctest::Approx(-0.5));
  }
  SUBCASE("involution and trace") {
    for (int i = 0; i < 200; ++i) {
      const Matrix4 m = swp::testing::random_state(rng).matrix();
      const Matrix4 pt = partial_transpose(m);
      CHECK(max_abs_diff(partial_transpose(pt), m) == 0.0);
      CHECK(std::abs(pt.trace() - m.trace()) < 1e-14);
      CHECK(max_abs_diff(pt, pt.adjoint()) < 1e-15);
    }
  }
}

TEST_CASE("hermitian eigen residual") {
  swp::Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const Matrix4 h = partial_transpose(swp::testing::random_state(rng).matrix());
    const HermitianEigen e = hermitian_eigen(h);
    for (int k = 0; k < 4; ++k)
      CHECK((h * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() <= 1e-10);
  }
}

TEST_CASE("negativity") {
  CHECK(negativity(DensityMatrix::pure(bell_phi_plus())) == doctest::Approx(0.5));
  CHECK(negativity(DensityMatrix()) == 0.0);
  swp::Rng rng(5);
  SUBCASE("separable mixtures are PPT") {
    for (int i = 0; i < 1000; ++i) CHECK(negativity(swp::testing::random_separable(rng)) < 1e-12);
  }
  SUBCASE("brute-force oracle") {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DensityMatrix rho = swp::testing::random_state(rng);
      worst = std::max(worst, std::abs(negativity(rho) - brute_negativity(rho.matrix())));
    }
    CHECK(worst <= 1e-9);
  }
  SUBCASE("printed loophole state") {
    CHECK(check_printed_state(printed_loophole_state()).negativity == doctest::Approx(0.104).epsilon(0.03));
  }
}

TEST_CASE("fidelity") {
  swp::Rng rng(17);
  const DensityMatrix r = swp::testing::random_state(rng);
  CHECK(fidelity(r, r) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fidelity(DensityMatrix::pure(basis(0)), DensityMatrix::pure(basis(3))) == doctest::Approx(0.0));

  Matrix4 a = Matrix4::Zero();
  a(0, 0) = a(1, 1) = 0.5;
  const double bhattacharyya = 2.0 * std::sqrt(0.5 * 0.25);
  CHECK(fidelity(DensityMatrix(a), DensityMatrix()) == doctest::Approx(bhattacharyya * bhattacharyya));

  for (int i = 0; i < 300; ++i) {
    const DensityMatrix x = swp::testing::random_state(rng);
    const DensityMatrix y = swp::testing::random_state(rng);
    const double f = fidelity(x, y);
    CHECK(std::abs(f - fidelity(y, x)) <= 1e-9);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("psd_sqrt rejects negative input") {
  Matrix4 m = Matrix4::Identity();
  m(3, 3) = -1e-3;
  CHECK_THROWS_AS(psd_sqrt(m), InvalidState);
  m(3, 3) = -1e-10;
  CHECK(psd_sqrt(m)(3, 3).real() == 0.0);
}

TEST_CASE("dephasing map") {
  const Vector4 v = Vector4::Constant(0.5);
  const DensityMatrix plus = DensityMatrix::pure(v);
  const DensityMatrix full = dephase(plus, 0.5, 0.5);
  CHECK(max_abs_diff(full.matrix(), Matrix4::Identity() / 4.0) < 1e-15);
  const DensityMatrix part = dephase(plus, 0.1, 0.0);
  CHECK(part(0, 2).real() == doctest::Approx(0.25 * 0.8));
  CHECK(part(0, 1).real() == doctest::Approx(0.25));
}

TEST_CASE("cholesky parametrization") {
  SUBCASE("zero angles give |00>") {
    const DensityMatrix rho = cholesky_to_state(CholeskyAngles{});
    CHECK(max_abs_diff(rho.matrix(), basis(0) * basis(0).adjoint()) < 1e-15);
  }
  SUBCASE("hand-solved angles give I/4") {
    // |l1..l4| = 1/2, l5..l10 = 0
    CholeskyAngles a;
    a.thetas[0] = std::acos(0.5);
    a.thetas[1] = std::acos(0.5 / std::sin(a.thetas[0]));
    a.thetas[2] = std::acos(0.5 / (std::sin(a.thetas[0]) * std::sin(a.thetas[1])));
    for (int i = 3; i < 9; ++i) a.thetas[i] = 0.0;
    const DensityMatrix rho = cholesky_to_state(a);
    CHECK(max_abs_diff(rho.matrix(), Matrix4::Identity() / 4.0) < 1e-14);
  }
  SUBCASE("10^4 random angle sets give valid states") {
    swp::Rng rng(23);
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
      const Matrix4 m = cholesky_factor(swp::testing::random_angles(rng));
      if (!check_state(m * m.adjoint()).ok()) ++failures;
    }
    CHECK(failures == 0);
  }
  SUBCASE("factor is lower triangular with real diagonal") {
    swp::Rng rng(29);
    const Matrix4 l = cholesky_factor(swp::testing::random_angles(rng));
    for (int i = 0; i < 4; ++i) {
      CHECK(l(i, i).imag() == 0.0);
      for (int j = i + 1; j < 4; ++j) CHECK(l(i, j) == Complex(0.0));
    }
  }
  SUBCASE("angles recovered from full-rank states") {
    swp::Rng rng(31);
    for (int i = 0; i < 500; ++i) {
      const DensityMatrix rho = swp::testing::random_state(rng);
      CHECK(max_abs_diff(cholesky_to_state(cholesky_angles(rho)).matrix(), rho.matrix()) < 1e-12);
    }
    Vector4 zero = Vector4::Zero();
    zero(0) = 1.0;
    CHECK_THROWS_AS(cholesky_angles(DensityMatrix::pure(zero)), InvalidState);
  }
}
