#pragma once

#include <string>
#include <vector>

#include "swp/model.hpp"
#include "swp/quantum_core.hpp"

namespace swp {

struct WitnessTerm {
  double coefficient = 0.0;
  PauliObservable obs;
};

/// Linear combination of bipartite Pauli operators.
struct WitnessSpec {
  std::string name;
  std::vector<WitnessTerm> terms;

  Matrix4 matrix() const;
  /// The non-identity observables a measurement of this witness needs.
  std::vector<PauliObservable> measured_observables() const;
};

/// I(x)I + X(x)Z + Y(x)Y.
WitnessSpec w0();
/// I(x)I - X(x)X - Z(x)Y - Y(x)Z.
WitnessSpec w1();

double witness_value(const DensityMatrix& rho, const WitnessSpec& w);

/// Tr(W rho(p, tau)).
double witness_expectation(const ScenarioParams& p, double tau, const WitnessSpec& w);

/// 1 - e^{-g t}(sin dphi_LR + sin dphi_RL) - (1/2) e^{-2 g t}(1 + cos(dphi_LR - dphi_RL)).
double w1_closed_form(const ScenarioParams& p, double tau);

/// (omega_LR + omega_RL)/2: W1 detects entanglement at short times iff gamma is below it.
double w1_threshold(const ScenarioParams& p);

struct FallTimeResult {
  double tau = 0.0;
  double value = 0.0;
  bool witnessing = false;  // value < 0
};

/// 4 pi / (omega_LR + omega_RL) for the gravity-on scenario. Throws
/// ConfigError when the rate sum is not positive.
double default_tau_max(const ScenarioParams& p);

/// Minimizer of the witness expectation for the alternative hypothesis
/// (gravity switched on) over [0, tau_max]: 2000-point grid, then golden
/// section on the bracketing cell down to 1e-4 s.
FallTimeResult optimal_fall_time(const ScenarioParams& p, const WitnessSpec& w, double tau_max);
FallTimeResult optimal_fall_time(const ScenarioParams& p, const WitnessSpec& w);

/// One curve of a free-fall scan.
struct WitnessScan {
  std::vector<double> taus;
  std::vector<double> values;
  double gamma = 0.0;
};

/// Uniform grid of `points` taus on [0, tau_max].
std::vector<double> tau_grid(double tau_max, int points);

WitnessScan scan_witness(const ScenarioParams& p, const WitnessSpec& w, const std::vector<double>& taus);
WitnessScan scan_negativity(const ScenarioParams& p, const std::vector<double>& taus);

}  // namespace swp
