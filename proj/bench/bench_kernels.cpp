// Serial reference vs OpenMP loop for the batched Monte Carlo kernels.

#include <vector>

#include <benchmark/benchmark.h>

#include "swp/hypothesis.hpp"
#include "swp/kernels.hpp"

namespace {

using swp::Execution;

struct Fixture {
  swp::ProbabilityVector p_a;
  swp::ProbabilityVector p_0;
  swp::ProbabilityVector tomo;
  std::vector<double> weights;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const swp::HypothesisPair h = swp::make_hypotheses(swp::ScenarioParams{});
    const auto obs = swp::witness_observables();
    Fixture out{swp::outcome_probabilities(h.alternative, obs), swp::outcome_probabilities(h.null, obs),
                swp::outcome_probabilities(h.alternative, swp::tomography_observables()), {}};
    out.weights = swp::llr_weights(out.p_a, out.p_0);
    return out;
  }();
  return f;
}

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_weighted_count_batch(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(swp::weighted_count_batch(f.p_0, f.weights, state.range(1), {1, 1}, 2000, mode(state)));
  state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_linear_estimate_batch(benchmark::State& state) {
  const Fixture& f = fixture();
  const std::vector<double> c{-1.0, -1.0, -1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(swp::linear_estimate_batch(f.p_a, c, 1.0, state.range(1), {1, 2}, 2000, mode(state)));
  state.SetItemsProcessed(state.iterations() * 2000);
}

void BM_reconstruction_batch(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state)
    benchmark::DoNotOptimize(swp::reconstruction_batch(f.tomo, state.range(1), {1, 3}, 100, 100, mode(state)));
  state.SetItemsProcessed(state.iterations() * 100);
}

}  // namespace

// Arg 0: 0 = serial, 1 = OpenMP. Arg 1: shots per observable.
BENCHMARK(BM_weighted_count_batch)->ArgsProduct({{0, 1}, {100, 1000}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_linear_estimate_batch)->ArgsProduct({{0, 1}, {100, 1000}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_reconstruction_batch)->ArgsProduct({{0, 1}, {10, 1000}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
