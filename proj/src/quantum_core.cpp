#include "swp/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "swp/errors.hpp"

namespace swp {

namespace {

Matrix4 hermitian_part(const Matrix4& m) { return 0.5 * (m + m.adjoint()); }

// Single-qubit eigenvectors, +1 eigenvector first.
std::array<Eigen::Vector2cd, 2> qubit_eigenvectors(Pauli p) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  switch (p) {
    case Pauli::X:
      return {Eigen::Vector2cd(r, r), Eigen::Vector2cd(r, -r)};
    case Pauli::Y:
      return {Eigen::Vector2cd(r, r * i), Eigen::Vector2cd(r, -r * i)};
    case Pauli::Z:
      return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
    case Pauli::I:
      break;
  }
  throw std::invalid_argument("identity factor has a degenerate eigenbasis");
}

}  // namespace

StateCheck check_state(const Matrix4& m, const StateTolerance& tol) {
  StateCheck c;
  c.hermitian_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  c.trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  c.min_eigenvalue = hermitian_eigen(hermitian_part(m)).values(0);
  c.hermitian = c.hermitian_defect <= tol.hermitian;
  c.unit_trace = c.trace_defect <= tol.trace;
  c.positive = c.min_eigenvalue >= tol.min_eigenvalue;
  return c;
}

DensityMatrix::DensityMatrix() : m_(Matrix4::Identity() * 0.25) {}

DensityMatrix::DensityMatrix(const Matrix4& m, const StateTolerance& tol) {
  const StateCheck c = check_state(m, tol);
  if (!c.ok()) {
    throw InvalidState(fmt::format(
        "not a density matrix: hermitian defect {:.3g}, trace defect {:.3g}, "
        "min eigenvalue {:.3g}",
        c.hermitian_defect, c.trace_defect, c.min_eigenvalue));
  }
  m_ = hermitian_part(m);
}

DensityMatrix DensityMatrix::pure(const Vector4& psi) {
  const double norm = psi.squaredNorm();
  if (!(norm > 0.0)) throw InvalidState("zero state vector");
  return trusted(psi * psi.adjoint() / norm);
}

DensityMatrix DensityMatrix::trusted(const Matrix4& m) {
  DensityMatrix d;
  d.m_ = hermitian_part(m);
  return d;
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: break;
  }
  throw std::invalid_argument(fmt::format("unknown Pauli label '{}'", c));
}

std::string PauliObservable::label() const {
  return {to_char(left), to_char(right)};
}

Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  const Complex i{0.0, 1.0};
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix4 pauli_tensor(const PauliObservable& obs) {
  const Matrix2 a = pauli_matrix(obs.left);
  const Matrix2 b = pauli_matrix(obs.right);
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

MeasurementBasis eigenbasis(const PauliObservable& obs) {
  const auto left = qubit_eigenvectors(obs.left);
  const auto right = qubit_eigenvectors(obs.right);
  MeasurementBasis basis;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Vector4 v;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) v(2 * i + j) = left[a](i) * right[b](j);
      basis.vectors[2 * a + b] = v;
      basis.projectors[2 * a + b] = v * v.adjoint();
      basis.eigenvalues[2 * a + b] = (a == b) ? 1.0 : -1.0;
    }
  }
  return basis;
}

double expectation(const DensityMatrix& rho, const Matrix4& hermitian_op) {
  return (rho.matrix() * hermitian_op).trace().real();
}

double expectation(const DensityMatrix& rho, const PauliObservable& obs) {
  return expectation(rho, pauli_tensor(obs));
}

Matrix4 partial_transpose(const Matrix4& m) {
  Matrix4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out.block<2, 2>(2 * a, 2 * b) = m.block<2, 2>(2 * a, 2 * b).transpose();
  return out;
}

HermitianEigen hermitian_eigen(const Matrix4& h) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Hermitian eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double negativity(const DensityMatrix& rho) {
  const Eigen::Vector4d ev = hermitian_eigen(partial_transpose(rho.matrix())).values;
  double sum = 0.0;
  for (int i = 0; i < 4; ++i)
    if (ev(i) < 0.0) sum -= ev(i);
  return sum;
}

Matrix4 psd_sqrt(const Matrix4& h) {
  const HermitianEigen e = hermitian_eigen(hermitian_part(h));
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    const double v = e.values(i);
    if (v < -1e-9)
      throw InvalidState(fmt::format("matrix square root of non-PSD input (eigenvalue {:.3g})", v));
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix4 s = psd_sqrt(rho.matrix());
  const Matrix4 inner = hermitian_part(s * sigma.matrix() * s);
  const Eigen::Vector4d ev = hermitian_eigen(inner).values;
  double root = 0.0;
  for (int i = 0; i < 4; ++i) root += std::sqrt(std::max(ev(i), 0.0));
  return std::clamp(root * root, 0.0, 1.0);
}

DensityMatrix dephase(const DensityMatrix& rho, double p_first, double p_second) {
  const Matrix4 z1 = pauli_tensor({Pauli::Z, Pauli::I});
  const Matrix4 z2 = pauli_tensor({Pauli::I, Pauli::Z});
  Matrix4 m = rho.matrix();
  m = (1.0 - p_first) * m + p_first * z1 * m * z1;
  m = (1.0 - p_second) * m + p_second * z2 * m * z2;
  return DensityMatrix::trusted(m);
}

Matrix4 cholesky_factor(const CholeskyAngles& angles) {
  std::array<Complex, 10> l{};
  double tail = 1.0;  // product of sines so far
  for (int k = 0; k < 9; ++k) {
    l[k] = tail * std::cos(angles.thetas[k]);
    tail *= std::sin(angles.thetas[k]);
  }
  l[9] = tail;
  // l5..l10 carry phases phi5..phi10
  for (int k = 4; k < 10; ++k) l[k] *= std::polar(1.0, angles.phis[k - 4]);

  Matrix4 L = Matrix4::Zero();
  L(0, 0) = l[0];
  L(1, 1) = l[1];
  L(2, 2) = l[2];
  L(3, 3) = l[3];
  L(1, 0) = l[4];
  L(2, 1) = l[5];
  L(3, 2) = l[6];
  L(2, 0) = l[7];
  L(3, 1) = l[8];
  L(3, 0) = l[9];
  return L;
}

DensityMatrix cholesky_to_state(const CholeskyAngles& angles) {
  const Matrix4 L = cholesky_factor(angles);
  return DensityMatrix::trusted(L * L.adjoint());
}

CholeskyAngles cholesky_angles(const DensityMatrix& rho) {
  const Eigen::LLT<Matrix4> llt(rho.matrix());
  if (llt.info() != Eigen::Success) throw InvalidState("cholesky_angles: state is not positive definite");
  const Matrix4 L = llt.matrixL();
  const std::array<Complex, 10> l{L(0, 0), L(1, 1), L(2, 2), L(3, 3), L(1, 0),
                                  L(2, 1), L(3, 2), L(2, 0), L(3, 1), L(3, 0)};
  std::array<double, 10> tail{};  // tail[k] = sqrt(sum_{j >= k} |l_j|^2)
  double acc = 0.0;
  for (int k = 9; k >= 0; --k) {
    acc += std::norm(l[k]);
    tail[k] = std::sqrt(acc);
  }
  CholeskyAngles a;
  for (int k = 0; k < 9; ++k) a.thetas[k] = std::atan2(tail[k + 1], std::abs(l[k]));
  for (int k = 4; k < 10; ++k) a.phis[k - 4] = std::arg(l[k]);
  return a;
}

}  // namespace swp
