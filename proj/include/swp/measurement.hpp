#pragma once

// Outcome probabilities and simulated counts for lists of bipartite Pauli
// measurements. Entry 4i + j belongs to eigenprojector j of observable i.

#include <cstdint>
#include <vector>

#include "swp/quantum_core.hpp"
#include "swp/random.hpp"

namespace swp {

using ObservableList = std::vector<PauliObservable>;

/// X(x)X, Y(x)Z, Z(x)Y: the three settings a W1 measurement needs.
ObservableList witness_observables();
/// All nine pairs with both factors in {X, Y, Z}.
ObservableList tomography_observables();

struct ProbabilityVector {
  ObservableList observables;
  std::vector<double> probs;  // 4 * observables.size()

  std::size_t blocks() const { return observables.size(); }
};

struct DataVector {
  std::vector<std::int64_t> counts;  // 4 * l
  std::int64_t shots_per_observable = 0;

  std::int64_t total() const;
};

std::vector<MeasurementBasis> measurement_bases(const ObservableList& observables);

/// p_ij = Tr(rho P_ij). Round-off negatives are clamped to zero and each
/// block renormalized.
ProbabilityVector outcome_probabilities(const DensityMatrix& rho, const ObservableList& observables);

/// Independent multinomial draws of `shots` outcomes per observable.
DataVector simulate_measurements(const ProbabilityVector& p, std::int64_t shots, Rng& rng);
DataVector simulate_measurements(const ProbabilityVector& p, std::int64_t shots, std::uint64_t seed);
DataVector simulate_measurements(const DensityMatrix& rho, const ObservableList& observables, std::int64_t shots,
                                 std::uint64_t seed);

/// Throws ConfigError unless counts has 4 entries per observable and every
/// block sums to shots_per_observable.
void validate_data(const DataVector& n, std::size_t observables);

}  // namespace swp
