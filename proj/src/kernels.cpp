#include "swp/kernels.hpp"

#include <array>

#include "swp/tomography.hpp"

namespace swp {

double weighted_count(const DataVector& n, std::span<const double> weights) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n.counts.size(); ++i)
    if (n.counts[i] > 0) sum += static_cast<double>(n.counts[i]) * weights[i];
  return sum;
}

std::vector<double> weighted_count_batch(const ProbabilityVector& source, std::span<const double> weights,
                                         std::int64_t shots, StreamKey key, int trials, Execution exec) {
  return map_indices<double>(
      trials,
      [&](std::int64_t i) {
        Rng rng(key.seed, key.stream, static_cast<std::uint64_t>(i));
        return weighted_count(simulate_measurements(source, shots, rng), weights);
      },
      exec);
}

std::vector<double> linear_estimate_batch(const ProbabilityVector& source, std::span<const double> coefficients,
                                          double constant, std::int64_t shots, StreamKey key, int trials,
                                          Execution exec) {
  const auto bases = measurement_bases(source.observables);
  return map_indices<double>(
      trials,
      [&](std::int64_t i) {
        Rng rng(key.seed, key.stream, static_cast<std::uint64_t>(i));
        const DataVector n = simulate_measurements(source, shots, rng);
        double estimate = constant;
        for (std::size_t k = 0; k < bases.size(); ++k) {
          double signed_sum = 0.0;
          for (int j = 0; j < 4; ++j) signed_sum += bases[k].eigenvalues[j] * static_cast<double>(n.counts[4 * k + j]);
          estimate += coefficients[k] * signed_sum / static_cast<double>(shots);
        }
        return estimate;
      },
      exec);
}

std::vector<DensityMatrix> reconstruction_batch(const ProbabilityVector& source, std::int64_t shots, StreamKey key,
                                                int trials, int iterations, Execution exec) {
  const MLEConfig cfg{iterations};
  return map_indices<DensityMatrix>(
      trials,
      [&](std::int64_t i) {
        Rng rng(key.seed, key.stream, static_cast<std::uint64_t>(i));
        return mle_reconstruct(simulate_measurements(source, shots, rng), source.observables, cfg);
      },
      exec);
}

}  // namespace swp
