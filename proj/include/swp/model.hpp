#pragma once

// Spin witness protocol physics: branch separations, coupling tensors,
// gravitational and Casimir-Polder phase rates, the decohered two-spin state
// and the diagnostic corrections to the position-eigenstate approximation.

#include <array>

#include "swp/quantum_core.hpp"

namespace swp {

/// SI values.
struct PhysicalConstants {
  double G = 6.674e-11;     // m^3 kg^-1 s^-2
  double hbar = 1.0546e-34; // J s
  double c = 2.998e8;       // m s^-1
};

/// Physical inputs of one scenario, SI units.
struct ScenarioParams {
  double mass = 1e-14;
  double separation_d = 450e-6;
  double half_split_delta = 125e-6;
  double trap_omega = 1e3;
  double mean_occupation_nbar = 1e6;
  double dephasing_gamma = 0.0;
  double sphere_radius_R = 1e-6;
  double permittivity_eps = 5.7;
  bool gravity_on = true;
  double cp_scale = 1.0;

  PhysicalConstants constants{};
};

/// Throws ConfigError when a field is out of range or the branches touch.
void validate(const ScenarioParams& p);

enum class Branch { L = 0, R = 1 };

/// A pair of branch labels (first particle, second particle).
struct BranchPair {
  Branch first;
  Branch second;

  int index() const { return 2 * static_cast<int>(first) + static_cast<int>(second); }
};

inline constexpr BranchPair LL{Branch::L, Branch::L};
inline constexpr BranchPair LR{Branch::L, Branch::R};
inline constexpr BranchPair RL{Branch::R, Branch::L};
inline constexpr BranchPair RR{Branch::R, Branch::R};

/// d_{mu nu}; LR is the closest approach d - 2 delta, RL the farthest d + 2 delta.
struct BranchSeparations {
  std::array<double, 4> values{};  // indexed by BranchPair::index()

  double operator()(BranchPair p) const { return values[p.index()]; }
  double min() const;
};

BranchSeparations branch_separations(const ScenarioParams& p);

/// Q^(n)_{ab,mn} = 1/d_ab^n - 1/d_mn^n, units m^-n.
struct CouplingTensor {
  int order = 1;
  std::array<std::array<double, 4>, 4> values{};

  double operator()(BranchPair ab, BranchPair mn) const { return values[ab.index()][mn.index()]; }
  /// Q^(n)_{LR,RL}, the fastest-oscillating component.
  double fastest() const { return (*this)(LR, RL); }
};

CouplingTensor coupling_tensor(const ScenarioParams& p, int order);

/// (d_LR^-n, d_LL^-n, d_RL^-n): one entry per distinct separation.
Eigen::Vector3d inverse_separation_powers(const ScenarioParams& p, int order);

/// Casimir-Polder coefficient alpha(R, eps) * cp_scale, J m^7.
double cp_coupling(const ScenarioParams& p);

/// omega_{mu nu} with Delta phi_{mu nu} = omega_{mu nu} * tau, rad/s.
struct PhaseRates {
  double omega_LR = 0.0;
  double omega_RL = 0.0;

  double sum() const { return omega_LR + omega_RL; }
};

PhaseRates phase_rates(const ScenarioParams& p);

/// Angular rates of the fastest (LR,RL) coherence, split by interaction.
struct CouplingRates {
  double gravity = 0.0;         // G m^2 |Q^(1)_LRRL| / hbar (zero if gravity is off)
  double casimir_polder = 0.0;  // alpha |Q^(7)_LRRL| / hbar
  double total() const { return gravity + casimir_polder; }
};

CouplingRates fastest_coupling_rates(const ScenarioParams& p);

/// Free-fall time after which the fastest coherence has turned by one radian.
double characteristic_time(const ScenarioParams& p);

/// Reduced two-spin state after free fall of duration tau, with local
/// dephasing at rate gamma. Pure-state amplitudes are
/// (|00> + e^{i dphi_RL}|01> + e^{i dphi_LR}|10> + |11>)/2; coherences between
/// basis states differing on k qubits are damped by e^{-k gamma tau}.
DensityMatrix spin_state(const ScenarioParams& p, double tau);

/// Corrections to the position-eigenstate approximation for the (LR,RL) pair.
struct PEAReport {
  double tau = 0.0;
  double theta_magnitude = 0.0;
  double phase_correction = 0.0;          // G^2 m^3 tau^3 |Q^(4)| / (6 hbar), rad
  double decoherence_exponent_zeroT = 0.0;    // -|theta|^2
  double decoherence_exponent_thermal = 0.0;  // -(nbar/2 + 1)|theta|^2
  double decoherence_factor_zeroT = 1.0;
  double decoherence_factor_thermal = 1.0;
  double kappa = 0.0;                     // delta sqrt(m omega / 2 hbar)
};

PEAReport pea_corrections(const ScenarioParams& p, double tau);

}  // namespace swp
