#pragma once

// Two-qubit states, bipartite Pauli observables and entanglement quantities.
//
// Basis ordering: index = 2 * (first qubit) + (second qubit). The partial
// transpose acts on the second tensor factor.

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace swp {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

/// Tolerances used when checking that a matrix is a density matrix.
struct StateTolerance {
  double hermitian = 1e-12;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
};

/// Result of checking the three density-matrix invariants.
struct StateCheck {
  double hermitian_defect = 0.0;  // max |m(i,j) - conj(m(j,i))|
  double trace_defect = 0.0;      // |Tr m - 1|
  double min_eigenvalue = 0.0;    // of the Hermitian part
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const { return hermitian && unit_trace && positive; }
};

StateCheck check_state(const Matrix4& m, const StateTolerance& tol = {});

/// 4x4 Hermitian, unit-trace, positive semidefinite matrix.
///
/// Construction validates the invariants and throws InvalidState on failure.
/// The stored matrix is exactly Hermitian (the Hermitian part of the input).
class DensityMatrix {
 public:
  /// Maximally mixed state I/4.
  DensityMatrix();
  explicit DensityMatrix(const Matrix4& m, const StateTolerance& tol = {});

  static DensityMatrix maximally_mixed() { return DensityMatrix(); }
  static DensityMatrix pure(const Vector4& psi);

  /// Skips validation. For constructions that guarantee the invariants
  /// (Cholesky products, trace-normalized congruences); the input is still
  /// replaced by its Hermitian part.
  static DensityMatrix trusted(const Matrix4& m);

  const Matrix4& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  /// Tr(rho^2).
  double purity() const;

 private:
  Matrix4 m_;
};

enum class Pauli { I, X, Y, Z };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// sigma_left (x) sigma_right.
struct PauliObservable {
  Pauli left = Pauli::I;
  Pauli right = Pauli::I;

  std::string label() const;
  friend bool operator==(const PauliObservable&, const PauliObservable&) = default;
};

Matrix2 pauli_matrix(Pauli p);
Matrix4 pauli_tensor(const PauliObservable& obs);

/// Four rank-1 projectors onto the product eigenbasis of a bipartite Pauli
/// observable. Outcome j = 2a + b pairs eigenvector a of the left factor with
/// eigenvector b of the right factor; index 0 of each factor is the +1
/// eigenvector, so the eigenvalues are (+1, -1, -1, +1).
struct MeasurementBasis {
  std::array<Vector4, 4> vectors;
  std::array<Matrix4, 4> projectors;
  std::array<double, 4> eigenvalues;
};

/// Throws std::invalid_argument for observables with an identity factor.
MeasurementBasis eigenbasis(const PauliObservable& obs);

/// Tr(rho * sigma).
double expectation(const DensityMatrix& rho, const PauliObservable& obs);
double expectation(const DensityMatrix& rho, const Matrix4& hermitian_op);

Matrix4 partial_transpose(const Matrix4& m);

/// Eigen-decomposition of a 4x4 Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  Eigen::Vector4d values;
  Matrix4 vectors;  // columns
};

HermitianEigen hermitian_eigen(const Matrix4& h);

/// Sum of |lambda| over the negative eigenvalues of the partial transpose.
double negativity(const DensityMatrix& rho);

/// Square root of a PSD Hermitian matrix. Eigenvalues in [-1e-9, 0) are
/// clamped to zero; anything more negative throws InvalidState.
Matrix4 psd_sqrt(const Matrix4& h);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Single-qubit phase damping on each qubit: rho -> (1-p) rho + p Z rho Z.
DensityMatrix dephase(const DensityMatrix& rho, double p_first, double p_second);

/// 15-angle hyperspherical parametrization of the Cholesky factor of a
/// two-qubit state (9 polar angles, 6 phases for the off-diagonal entries).
struct CholeskyAngles {
  std::array<double, 9> thetas{};
  std::array<double, 6> phis{};

  static constexpr int size = 15;
  double operator[](int i) const { return i < 9 ? thetas[i] : phis[i - 9]; }
  double& operator[](int i) { return i < 9 ? thetas[i] : phis[i - 9]; }
};

/// Lower-triangular L with real diagonal, L(0,0)=l1, L(1,1)=l2, L(2,2)=l3,
/// L(3,3)=l4, L(1,0)=l5, L(2,1)=l6, L(3,2)=l7, L(2,0)=l8, L(3,1)=l9,
/// L(3,0)=l10, where (|l1|,...,|l10|) is a point on the unit 9-sphere.
Matrix4 cholesky_factor(const CholeskyAngles& angles);

/// L L^dagger. Always a valid state.
DensityMatrix cholesky_to_state(const CholeskyAngles& angles);

/// Angles of the Cholesky factor (positive diagonal) of a full-rank state;
/// thetas in [0, pi/2], phis in (-pi, pi]. Throws InvalidState when the state
/// is not positive definite.
CholeskyAngles cholesky_angles(const DensityMatrix& rho);

}  // namespace swp
