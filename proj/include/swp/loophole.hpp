#pragma once

// Search for states that explain a witness measurement record at least as
// well as the alternative-hypothesis state while being less entangled than
// the null-hypothesis state.

#include <cstdint>

#include "swp/measurement.hpp"
#include "swp/quantum_core.hpp"

namespace swp {

struct OptimizationConfig {
  int max_iterations = 500;       // BFGS iterations per subproblem
  double gradient_step = 1e-6;    // central-difference step in the angles
  double constraint_margin = 1e-4;
  int restarts = 32;
  bool constrained = true;        // false: plain maximum likelihood over the angles
};

void validate(const OptimizationConfig& cfg);

/// -sum_i n_i log Tr(rho(angles) P_i); +inf when a counted outcome has zero
/// probability.
double neg_log_likelihood(const CholeskyAngles& angles, const DataVector& n, const ObservableList& observables);
double neg_log_likelihood(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables);

struct LoopholeResult {
  DensityMatrix state;
  CholeskyAngles angles;
  double nll = 0.0;
  double negativity = 0.0;
  double negativity_bound = 0.0;  // N(rho_null) - margin
  bool constraint_satisfied = false;
  double nll_reference = 0.0;     // NLL of the reference (alternative) state
  int feasible_restarts = 0;
};

/// Minimizes the NLL over the Cholesky angles subject to
/// negativity(state) <= negativity(rho_null) - margin, from cfg.restarts random
/// starts. The best feasible NLL wins; ties go to the lower negativity.
/// Throws NumericalError if no restart ends feasible.
LoopholeResult find_loophole_state(const DataVector& n, const ObservableList& observables,
                                   const DensityMatrix& rho_null, const DensityMatrix& rho_reference,
                                   const OptimizationConfig& cfg, std::uint64_t seed);

struct LoopholeVerification {
  double null_negativity = 0.0;
  double result_negativity = 0.0;
  bool negativity_ordered = false;  // N(null) > N(result)
  double nll_result = 0.0;
  double nll_reference = 0.0;
  bool at_least_as_likely = false;  // NLL(result) <= NLL(reference)
  StateCheck state;

  bool ok() const { return negativity_ordered && at_least_as_likely && state.ok(); }
};

LoopholeVerification verify_loophole(const LoopholeResult& result, const DensityMatrix& rho_a,
                                     const DensityMatrix& rho_null, const DataVector& n,
                                     const ObservableList& observables);

/// The published loophole state for d = 350 um, gamma = 0.3 /s, tau = 0.34 s,
/// entries rounded to three significant figures.
Matrix4 printed_loophole_state();

struct PrintedStateCheck {
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  double negativity = 0.0;
  bool trace_ok = false;       // |Tr - 1| <= 1e-3
  bool psd_ok = false;         // min eigenvalue >= -2e-3
  bool negativity_ok = false;  // |N - 0.104| <= 0.003

  bool ok() const { return trace_ok && psd_ok && negativity_ok; }
};

/// Checks a rounded matrix at three-significant-figure tolerance. Uses the
/// Hermitian part of the input.
PrintedStateCheck check_printed_state(const Matrix4& m);

}  // namespace swp
