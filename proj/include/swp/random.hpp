#pragma once

// Seeded, platform-independent random streams.
//
// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard).
// Uniform doubles take the top 53 bits of one engine output. Standard library
// distributions are avoided because their algorithms are implementation
// defined. Independent substreams are keyed by (seed, stream, index); the key
// is mixed with SplitMix64 into the engine seed, so trial i of a batch draws
// the same numbers whatever thread or order it runs in.

#include <array>
#include <cstdint>
#include <random>
#include <span>

namespace swp {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal();

  /// Index drawn from a discrete distribution given by `probs` (need not be
  /// normalized). Inversion on the running sum.
  int categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

/// Counts over `probs.size()` categories from `shots` independent draws.
template <std::size_t K>
std::array<std::int64_t, K> multinomial(Rng& rng, const std::array<double, K>& probs, std::int64_t shots) {
  std::array<double, K> cumulative{};
  double run = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    run += probs[k];
    cumulative[k] = run;
  }
  std::array<std::int64_t, K> counts{};
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * run;
    std::size_t k = 0;
    while (k + 1 < K && u >= cumulative[k]) ++k;
    ++counts[k];
  }
  return counts;
}

}  // namespace swp
