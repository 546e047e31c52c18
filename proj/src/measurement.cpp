#include "swp/measurement.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "swp/errors.hpp"

namespace swp {

ObservableList witness_observables() {
  return {{Pauli::X, Pauli::X}, {Pauli::Y, Pauli::Z}, {Pauli::Z, Pauli::Y}};
}

ObservableList tomography_observables() {
  ObservableList out;
  for (Pauli a : {Pauli::X, Pauli::Y, Pauli::Z})
    for (Pauli b : {Pauli::X, Pauli::Y, Pauli::Z}) out.push_back({a, b});
  return out;
}

std::int64_t DataVector::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::vector<MeasurementBasis> measurement_bases(const ObservableList& observables) {
  std::vector<MeasurementBasis> out;
  out.reserve(observables.size());
  for (const auto& o : observables) out.push_back(eigenbasis(o));
  return out;
}

ProbabilityVector outcome_probabilities(const DensityMatrix& rho, const ObservableList& observables) {
  ProbabilityVector pv;
  pv.observables = observables;
  pv.probs.reserve(4 * observables.size());
  for (const auto& basis : measurement_bases(observables)) {
    std::array<double, 4> block{};
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      block[j] = std::max(0.0, expectation(rho, basis.projectors[j]));
      sum += block[j];
    }
    for (double v : block) pv.probs.push_back(v / sum);
  }
  return pv;
}

DataVector simulate_measurements(const ProbabilityVector& p, std::int64_t shots, Rng& rng) {
  if (shots < 1) throw ConfigError(fmt::format("shots per observable must be >= 1 (got {})", shots));
  DataVector n;
  n.shots_per_observable = shots;
  n.counts.reserve(p.probs.size());
  for (std::size_t i = 0; i < p.blocks(); ++i) {
    const std::array<double, 4> block{p.probs[4 * i], p.probs[4 * i + 1], p.probs[4 * i + 2], p.probs[4 * i + 3]};
    for (auto c : multinomial(rng, block, shots)) n.counts.push_back(c);
  }
  return n;
}

DataVector simulate_measurements(const ProbabilityVector& p, std::int64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_measurements(p, shots, rng);
}

DataVector simulate_measurements(const DensityMatrix& rho, const ObservableList& observables, std::int64_t shots,
                                 std::uint64_t seed) {
  return simulate_measurements(outcome_probabilities(rho, observables), shots, seed);
}

void validate_data(const DataVector& n, std::size_t observables) {
  if (n.counts.size() != 4 * observables)
    throw ConfigError(fmt::format("data vector has {} entries, expected {}", n.counts.size(), 4 * observables));
  for (std::size_t i = 0; i < observables; ++i) {
    std::int64_t sum = 0;
    for (int j = 0; j < 4; ++j) {
      if (n.counts[4 * i + j] < 0) throw ConfigError("negative outcome count");
      sum += n.counts[4 * i + j];
    }
    if (sum != n.shots_per_observable)
      throw ConfigError(fmt::format("block {} sums to {}, expected {}", i, sum, n.shots_per_observable));
  }
}

}  // namespace swp
