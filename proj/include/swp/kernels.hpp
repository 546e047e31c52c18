#pragma once

// Batched Monte Carlo kernels. Each kernel has a serial reference loop and an
// OpenMP loop over trials; trial i always draws from Rng(key.seed,
// key.stream, i), so both produce bit-identical output.

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "swp/measurement.hpp"
#include "swp/quantum_core.hpp"

namespace swp {

enum class Execution { serial, parallel };

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// out[i] = fn(i) for i in [0, n). Exceptions thrown by fn are rethrown after
/// the loop (the first one caught wins).
template <class T, class Fn>
std::vector<T> map_indices(std::int64_t n, Fn&& fn, Execution exec) {
  std::vector<T> out(static_cast<std::size_t>(n));
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
#pragma omp critical(swp_map_indices_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// sum_ij n_ij w_ij for data drawn from `source`. Entries with zero count are
/// skipped, so infinite weights only matter when their outcome occurs.
double weighted_count(const DataVector& n, std::span<const double> weights);

/// Per-trial weighted_count(simulate(source, shots), weights).
std::vector<double> weighted_count_batch(const ProbabilityVector& source, std::span<const double> weights,
                                         std::int64_t shots, StreamKey key, int trials,
                                         Execution exec = Execution::parallel);

/// Per-trial plug-in estimate constant + sum_i c_i <sigma_i>^, where
/// <sigma_i>^ is the empirical mean of the +-1 outcomes of observable i.
std::vector<double> linear_estimate_batch(const ProbabilityVector& source, std::span<const double> coefficients,
                                          double constant, std::int64_t shots, StreamKey key, int trials,
                                          Execution exec = Execution::parallel);

/// Per-trial MLE reconstruction (100 R rho R iterations by default) from data
/// drawn from `source`.
std::vector<DensityMatrix> reconstruction_batch(const ProbabilityVector& source, std::int64_t shots,
                                                StreamKey key, int trials, int iterations = 100,
                                                Execution exec = Execution::parallel);

}  // namespace swp
