#pragma once

// Maximum-likelihood two-qubit tomography from Pauli-basis counts, and the
// tomography-based hypothesis statistics built on it.

#include <cstdint>
#include <vector>

#include "swp/hypothesis.hpp"
#include "swp/measurement.hpp"
#include "swp/model.hpp"
#include "swp/quantum_core.hpp"

namespace swp {

/// The nine X/Y/Z pairs. Informationally complete for two qubits.
struct TomographySetup {
  ObservableList observables = tomography_observables();
};

struct MLEConfig {
  int iterations = 100;
};

/// R(rho) = (1/|n|_1) sum_i n_i / Tr(rho P_i) P_i. Throws NumericalError when a
/// projector with a positive count has zero probability under rho.
Matrix4 r_operator(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables);
Matrix4 r_operator(const DensityMatrix& rho, const DataVector& n, const TomographySetup& setup);

/// sum_i n_i log Tr(rho P_i); -inf if a counted outcome has zero probability.
double log_likelihood(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables);

/// rho_{k+1} = N_Tr(R(rho_k) rho_k R(rho_k)) from rho_0 = I/4, for exactly
/// cfg.iterations steps. If `loglik_trace` is given it receives the
/// log-likelihood of rho_0 .. rho_K.
DensityMatrix mle_reconstruct(const DataVector& n, const TomographySetup& setup, const MLEConfig& cfg = {},
                              std::vector<double>* loglik_trace = nullptr);
DensityMatrix mle_reconstruct(const DataVector& n, const ObservableList& observables, const MLEConfig& cfg = {},
                              std::vector<double>* loglik_trace = nullptr);

/// Likelihood-ratio state distinction on full tomography data.
SuccessRateReport tomographic_success_rate(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                           SignificanceLevel alpha, const MonteCarloConfig& mc);

/// One reconstruction of one hypothesis.
struct TomographyTrial {
  bool alternative = false;
  int trial = 0;
  double negativity = 0.0;
  double fidelity_to_truth = 0.0;
};

struct ExceedanceResult {
  std::int64_t total_shots = 0;
  double tau = 0.0;
  double threshold = 0.0;  // nearest-rank 99th percentile of null negativities
  double rate = 0.0;       // fraction of alternative negativities above threshold
  std::vector<TomographyTrial> trials;  // null trials first, then alternative
};

/// Simulates `trials` tomographies of both hypotheses at the alternative's
/// optimal W1 fall time with `total_shots` split evenly over the nine
/// settings (must be a positive multiple of 9), reconstructs each by MLE and
/// compares negativities.
ExceedanceResult negativity_exceedance(const ScenarioParams& p, std::int64_t total_shots, int trials,
                                       std::uint64_t seed, const MLEConfig& cfg = {});

/// Fidelities of `trials` reconstructions of `truth` to `truth`.
std::vector<double> reconstruction_fidelities(const DensityMatrix& truth, std::int64_t shots_per_observable,
                                              int trials, std::uint64_t seed, const MLEConfig& cfg = {});

}  // namespace swp
