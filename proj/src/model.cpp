#include "swp/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "swp/errors.hpp"

namespace swp {

namespace {

void require(bool ok, const char* what, double value) {
  if (!ok) throw ConfigError(fmt::format("invalid scenario: {} (got {})", what, value));
}

// Pure phase-rate contribution of one branch pair relative to the LL/RR pairs.
double pair_rate(const ScenarioParams& p, double d_pair) {
  const auto& k = p.constants;
  const double d = p.separation_d;
  double energy = cp_coupling(p) * (std::pow(d_pair, -7) - std::pow(d, -7));
  if (p.gravity_on) energy += k.G * p.mass * p.mass * (1.0 / d_pair - 1.0 / d);
  return energy / k.hbar;
}

}  // namespace

void validate(const ScenarioParams& p) {
  const auto finite = [](double x) { return std::isfinite(x); };
  require(finite(p.mass) && p.mass > 0, "mass must be positive", p.mass);
  require(finite(p.separation_d) && p.separation_d > 0, "separation_d must be positive", p.separation_d);
  require(finite(p.half_split_delta) && p.half_split_delta >= 0, "half_split_delta must be non-negative",
          p.half_split_delta);
  require(p.separation_d - 2 * p.half_split_delta > 0, "branches touch: separation_d - 2 half_split_delta <= 0",
          p.separation_d - 2 * p.half_split_delta);
  require(finite(p.trap_omega) && p.trap_omega > 0, "trap_omega must be positive", p.trap_omega);
  require(finite(p.mean_occupation_nbar) && p.mean_occupation_nbar >= 0, "mean_occupation_nbar must be >= 0",
          p.mean_occupation_nbar);
  require(finite(p.dephasing_gamma) && p.dephasing_gamma >= 0, "dephasing_gamma must be >= 0", p.dephasing_gamma);
  require(finite(p.sphere_radius_R) && p.sphere_radius_R > 0, "sphere_radius_R must be positive", p.sphere_radius_R);
  require(finite(p.permittivity_eps) && p.permittivity_eps >= 1, "permittivity_eps must be >= 1", p.permittivity_eps);
  require(finite(p.cp_scale) && p.cp_scale >= 0, "cp_scale must be >= 0", p.cp_scale);
  require(p.constants.G > 0 && p.constants.hbar > 0 && p.constants.c > 0, "physical constants must be positive", 0.0);
}

double BranchSeparations::min() const { return *std::min_element(values.begin(), values.end()); }

BranchSeparations branch_separations(const ScenarioParams& p) {
  const double d = p.separation_d;
  const double two_delta = 2.0 * p.half_split_delta;
  BranchSeparations s;
  s.values[LL.index()] = d;
  s.values[RR.index()] = d;
  s.values[LR.index()] = d - two_delta;
  s.values[RL.index()] = d + two_delta;
  return s;
}

CouplingTensor coupling_tensor(const ScenarioParams& p, int order) {
  if (order < 1) throw ConfigError(fmt::format("coupling tensor order must be >= 1 (got {})", order));
  const BranchSeparations s = branch_separations(p);
  CouplingTensor q;
  q.order = order;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      q.values[a][b] = a == b ? 0.0 : std::pow(s.values[a], -order) - std::pow(s.values[b], -order);
  return q;
}

Eigen::Vector3d inverse_separation_powers(const ScenarioParams& p, int order) {
  const BranchSeparations s = branch_separations(p);
  return {std::pow(s(LR), -order), std::pow(s(LL), -order), std::pow(s(RL), -order)};
}

double cp_coupling(const ScenarioParams& p) {
  const auto& k = p.constants;
  const double clausius = (p.permittivity_eps - 1.0) / (p.permittivity_eps + 2.0);
  return clausius * clausius * 23.0 * k.hbar * k.c * std::pow(p.sphere_radius_R, 6) / (4.0 * std::numbers::pi) *
         p.cp_scale;
}

PhaseRates phase_rates(const ScenarioParams& p) {
  const BranchSeparations s = branch_separations(p);
  return {pair_rate(p, s(LR)), pair_rate(p, s(RL))};
}

CouplingRates fastest_coupling_rates(const ScenarioParams& p) {
  const auto& k = p.constants;
  CouplingRates r;
  if (p.gravity_on)
    r.gravity = k.G * p.mass * p.mass * std::abs(coupling_tensor(p, 1).fastest()) / k.hbar;
  r.casimir_polder = cp_coupling(p) * std::abs(coupling_tensor(p, 7).fastest()) / k.hbar;
  return r;
}

double characteristic_time(const ScenarioParams& p) {
  const PhaseRates w = phase_rates(p);
  return 1.0 / std::abs(w.omega_LR - w.omega_RL);
}

DensityMatrix spin_state(const ScenarioParams& p, double tau) {
  if (!(tau >= 0.0)) throw ConfigError(fmt::format("free-fall time must be >= 0 (got {})", tau));
  const PhaseRates w = phase_rates(p);
  Vector4 psi;
  psi << 1.0, std::polar(1.0, w.omega_RL * tau), std::polar(1.0, w.omega_LR * tau), 1.0;
  psi *= 0.5;
  Matrix4 m = psi * psi.adjoint();

  const double damp = std::exp(-p.dephasing_gamma * tau);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int flips = std::popcount(static_cast<unsigned>(i ^ j));
      if (flips == 1) m(i, j) *= damp;
      if (flips == 2) m(i, j) *= damp * damp;
    }
  }
  return DensityMatrix::trusted(m);
}

PEAReport pea_corrections(const ScenarioParams& p, double tau) {
  if (!(tau >= 0.0)) throw ConfigError(fmt::format("free-fall time must be >= 0 (got {})", tau));
  const auto& k = p.constants;
  const double m = p.mass;
  const double q2 = coupling_tensor(p, 2).fastest();
  const double q4 = coupling_tensor(p, 4).fastest();

  // theta = G m Q2 tau / sqrt2 * [ tau/2 sqrt(m w / hbar) - i sqrt(m / (hbar w)) ]
  const double prefactor = k.G * m * q2 * tau / std::sqrt(2.0);
  const Complex theta = prefactor * Complex(0.5 * tau * std::sqrt(m * p.trap_omega / k.hbar),
                                            -std::sqrt(m / (k.hbar * p.trap_omega)));
  const double theta2 = std::norm(theta);

  PEAReport r;
  r.tau = tau;
  r.theta_magnitude = std::abs(theta);
  r.phase_correction = k.G * k.G * m * m * m * tau * tau * tau * std::abs(q4) / (6.0 * k.hbar);
  r.decoherence_exponent_zeroT = -theta2;
  r.decoherence_exponent_thermal = -(0.5 * p.mean_occupation_nbar + 1.0) * theta2;
  r.decoherence_factor_zeroT = std::exp(r.decoherence_exponent_zeroT);
  r.decoherence_factor_thermal = std::exp(r.decoherence_exponent_thermal);
  r.kappa = p.half_split_delta * std::sqrt(m * p.trap_omega / (2.0 * k.hbar));
  return r;
}

}  // namespace swp
