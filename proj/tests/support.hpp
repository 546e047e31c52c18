#pragma once

// Random states for property tests.

#include <cmath>
#include <numbers>

#include "swp/quantum_core.hpp"
#include "swp/random.hpp"

namespace swp::testing {

inline Eigen::Vector2cd haar_qubit(Rng& rng) {
  Eigen::Vector2cd v(Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal()));
  return v / v.norm();
}

inline Vector4 haar_pure(Rng& rng) {
  Vector4 v;
  for (int i = 0; i < 4; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

inline Vector4 product(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Vector4 v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
  return v;
}

/// Mixture of k <= 8 Haar-random product states with flat Dirichlet weights.
inline DensityMatrix random_separable(Rng& rng) {
  const int k = 1 + static_cast<int>(rng.uniform() * 8);
  Matrix4 m = Matrix4::Zero();
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    const double w = -std::log(1.0 - rng.uniform());
    const Vector4 v = product(haar_qubit(rng), haar_qubit(rng));
    m += w * v * v.adjoint();
    total += w;
  }
  return DensityMatrix(m / total);
}

/// Ginibre-distributed mixed state G G^dagger / Tr.
inline DensityMatrix random_state(Rng& rng) {
  Matrix4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix4 m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

inline CholeskyAngles random_angles(Rng& rng, double spread = 2.0 * std::numbers::pi) {
  CholeskyAngles a;
  for (int i = 0; i < CholeskyAngles::size; ++i) a[i] = rng.uniform(-spread, spread);
  return a;
}

inline double max_abs_diff(const Matrix4& a, const Matrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace swp::testing
