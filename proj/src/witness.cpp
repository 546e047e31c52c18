#include "swp/witness.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "swp/errors.hpp"
#include "swp/kernels.hpp"

namespace swp {

Matrix4 WitnessSpec::matrix() const {
  Matrix4 m = Matrix4::Zero();
  for (const auto& t : terms) m += t.coefficient * pauli_tensor(t.obs);
  return m;
}

std::vector<PauliObservable> WitnessSpec::measured_observables() const {
  std::vector<PauliObservable> out;
  for (const auto& t : terms)
    if (t.obs.left != Pauli::I || t.obs.right != Pauli::I) out.push_back(t.obs);
  return out;
}

WitnessSpec w0() {
  return {"W0",
          {{1.0, {Pauli::I, Pauli::I}}, {1.0, {Pauli::X, Pauli::Z}}, {1.0, {Pauli::Y, Pauli::Y}}}};
}

WitnessSpec w1() {
  return {"W1",
          {{1.0, {Pauli::I, Pauli::I}},
           {-1.0, {Pauli::X, Pauli::X}},
           {-1.0, {Pauli::Z, Pauli::Y}},
           {-1.0, {Pauli::Y, Pauli::Z}}}};
}

double witness_value(const DensityMatrix& rho, const WitnessSpec& w) {
  double v = 0.0;
  for (const auto& t : w.terms) v += t.coefficient * expectation(rho, t.obs);
  return v;
}

double witness_expectation(const ScenarioParams& p, double tau, const WitnessSpec& w) {
  return witness_value(spin_state(p, tau), w);
}

double w1_closed_form(const ScenarioParams& p, double tau) {
  const PhaseRates w = phase_rates(p);
  const double a = w.omega_LR * tau;
  const double b = w.omega_RL * tau;
  const double damp = std::exp(-p.dephasing_gamma * tau);
  return 1.0 - damp * (std::sin(a) + std::sin(b)) - 0.5 * damp * damp * (1.0 + std::cos(a - b));
}

double w1_threshold(const ScenarioParams& p) { return 0.5 * phase_rates(p).sum(); }

double default_tau_max(const ScenarioParams& p) {
  ScenarioParams alt = p;
  alt.gravity_on = true;
  const double sum = phase_rates(alt).sum();
  if (!(sum > 0.0))
    throw ConfigError(fmt::format("no default tau_max: omega_LR + omega_RL = {} is not positive", sum));
  return 4.0 * std::numbers::pi / sum;
}

FallTimeResult optimal_fall_time(const ScenarioParams& p, const WitnessSpec& w, double tau_max) {
  if (!(tau_max > 0.0)) throw ConfigError(fmt::format("tau_max must be positive (got {})", tau_max));
  ScenarioParams alt = p;
  alt.gravity_on = true;
  const auto f = [&](double t) { return witness_expectation(alt, t, w); };

  constexpr int kGrid = 2000;
  const double step = tau_max / (kGrid - 1);
  int best = 0;
  double best_value = f(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = f(i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }

  // Golden section on the two cells around the grid minimum.
  double lo = std::max(0.0, (best - 1) * step);
  double hi = std::min(tau_max, (best + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  FallTimeResult r;
  r.tau = 0.5 * (lo + hi);
  r.value = f(r.tau);
  // The grid point can beat the refined interior point at the interval ends.
  if (best_value < r.value) {
    r.tau = best * step;
    r.value = best_value;
  }
  r.witnessing = r.value < 0.0;
  return r;
}

FallTimeResult optimal_fall_time(const ScenarioParams& p, const WitnessSpec& w) {
  return optimal_fall_time(p, w, default_tau_max(p));
}

std::vector<double> tau_grid(double tau_max, int points) {
  if (points < 2 || !(tau_max > 0.0)) throw ConfigError("tau grid needs >= 2 points and tau_max > 0");
  std::vector<double> taus(points);
  for (int i = 0; i < points; ++i) taus[i] = tau_max * i / (points - 1);
  return taus;
}

namespace {

void check_increasing(const std::vector<double>& taus) {
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] > taus[i - 1])) throw ConfigError("scan taus must be strictly increasing");
}

}  // namespace

WitnessScan scan_witness(const ScenarioParams& p, const WitnessSpec& w, const std::vector<double>& taus) {
  check_increasing(taus);
  WitnessScan scan{taus, {}, p.dephasing_gamma};
  scan.values = map_indices<double>(
      static_cast<std::int64_t>(taus.size()), [&](std::int64_t i) { return witness_expectation(p, taus[i], w); },
      Execution::parallel);
  return scan;
}

WitnessScan scan_negativity(const ScenarioParams& p, const std::vector<double>& taus) {
  check_increasing(taus);
  WitnessScan scan{taus, {}, p.dephasing_gamma};
  scan.values = map_indices<double>(
      static_cast<std::int64_t>(taus.size()), [&](std::int64_t i) { return negativity(spin_state(p, taus[i])); },
      Execution::parallel);
  return scan;
}

}  // namespace swp
