#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "support.hpp"
#include "swp/errors.hpp"
#include "swp/tomography.hpp"

using namespace swp;

namespace {

// diag(3/4, 1/4) (x) I/2: every tomography probability is a multiple of 1/8
DensityMatrix eighths_state() {
  Matrix4 m = Matrix4::Zero();
  m(0, 0) = m(1, 1) = 3.0 / 8.0;
  m(2, 2) = m(3, 3) = 1.0 / 8.0;
  return DensityMatrix(m);
}

DataVector exact_counts(const DensityMatrix& rho, const ObservableList& obs, std::int64_t shots) {
  const ProbabilityVector p = outcome_probabilities(rho, obs);
  DataVector n{std::vector<std::int64_t>(p.probs.size()), shots};
  for (std::size_t i = 0; i < obs.size(); ++i) {
    std::int64_t used = 0;
    for (int j = 0; j < 3; ++j) used += n.counts[4 * i + j] = std::llround(p.probs[4 * i + j] * shots);
    n.counts[4 * i + 3] = shots - used;
  }
  return n;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("R operator") {
  const TomographySetup setup;
  SUBCASE("exact frequencies at the true state give the identity") {
    const DensityMatrix rho = eighths_state();
    const Matrix4 r = r_operator(rho, exact_counts(rho, setup.observables, 8), setup);
    CHECK(swp::testing::max_abs_diff(r, Matrix4::Identity()) <= 1e-10);
  }
  SUBCASE("single projector") {
    const Matrix4 r = r_operator(DensityMatrix(), DataVector{{5, 0, 0, 0}, 5}, ObservableList{{Pauli::X, Pauli::Y}});
    const Matrix4 p = eigenbasis({Pauli::X, Pauli::Y}).projectors[0];
    CHECK(swp::testing::max_abs_diff(r, 4.0 * p) < 1e-12);
  }
  SUBCASE("direct re-summation") {
    Rng rng(2);
    const DensityMatrix rho = swp::testing::random_state(rng);
    const DensityMatrix truth = swp::testing::random_state(rng);
    const DataVector n = simulate_measurements(truth, setup.observables, 25, 77);
    Matrix4 direct = Matrix4::Zero();
    for (std::size_t i = 0; i < 9; ++i) {
      const MeasurementBasis b = eigenbasis(setup.observables[i]);
      for (int j = 0; j < 4; ++j) {
        const double pr = (rho.matrix() * b.projectors[j]).trace().real();
        direct += (n.counts[4 * i + j] / pr) * b.projectors[j];
      }
    }
    direct /= static_cast<double>(n.total());
    CHECK(swp::testing::max_abs_diff(r_operator(rho, n, setup), direct) < 1e-12);
  }
  SUBCASE("zero probability with a count") {
    Vector4 zero = Vector4::Zero();
    zero(0) = 1.0;
    try {
      r_operator(DensityMatrix::pure(zero), DataVector{{0, 0, 0, 1}, 1}, ObservableList{{Pauli::Z, Pauli::Z}});
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("ZZ") != std::string::npos);
    }
  }
}

TEST_CASE("MLE reconstruction") {
  const TomographySetup setup;
  SUBCASE("I/4 is a fixed point") {
    const DataVector n{std::vector<std::int64_t>(36, 1), 4};
    const DensityMatrix rho = mle_reconstruct(n, setup);
    CHECK(swp::testing::max_abs_diff(rho.matrix(), Matrix4::Identity() / 4.0) < 1e-14);
  }
  SUBCASE("valid output and non-decreasing likelihood") {
    Rng rng(61);
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix truth = t % 2 ? swp::testing::random_state(rng) : spin_state(ScenarioParams{}, 0.1 * t);
      const DataVector n = simulate_measurements(truth, setup.observables, 1 + t, 1000 + t);
      std::vector<double> trace;
      const DensityMatrix rho = mle_reconstruct(n, setup, {}, &trace);
      CHECK(check_state(rho.matrix()).ok());
      CHECK(trace.size() == 101);
      for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] >= trace[k - 1] - 1e-12);
    }
  }
  SUBCASE("high-count data recovers a mixed state") {
    ScenarioParams p;
    p.dephasing_gamma = 0.03;
    const DensityMatrix truth = spin_state(p, 20.0);
    const DensityMatrix rho = mle_reconstruct(exact_counts(truth, setup.observables, 1 << 20), setup);
    CHECK(fidelity(rho, truth) > 0.999);
  }
  CHECK_THROWS_AS(mle_reconstruct(DataVector{std::vector<std::int64_t>(36, 1), 4}, setup, MLEConfig{0}), ConfigError);
}

TEST_CASE("median fidelity grows with shots") {
  const DensityMatrix truth = make_hypotheses(ScenarioParams{}).alternative;
  double last = 0.0;
  for (std::int64_t shots : {3, 10, 100, 1000}) {
    const double m = median(reconstruction_fidelities(truth, shots, 200, 5));
    CHECK(m >= last);
    last = m;
  }
  CHECK(last > 0.99);
}

TEST_CASE("negativity exceedance") {
  ScenarioParams p;
  const ExceedanceResult r = negativity_exceedance(p, 90, 50, 3);
  CHECK(r.trials.size() == 100);
  CHECK_FALSE(r.trials.front().alternative);
  CHECK(r.trials.back().alternative);
  CHECK(r.rate >= 0.0);
  CHECK(r.rate <= 1.0);
  for (const auto& t : r.trials) CHECK(t.fidelity_to_truth <= 1.0);

  const ExceedanceResult again = negativity_exceedance(p, 90, 50, 3);
  CHECK(again.rate == r.rate);
  CHECK(again.threshold == r.threshold);

  CHECK_THROWS_AS(negativity_exceedance(p, 100, 10, 1), ConfigError);
  CHECK_THROWS_AS(negativity_exceedance(p, 0, 10, 1), ConfigError);
}

TEST_CASE("tomographic success rates") {
  ScenarioParams p;
  p.separation_d = 350e-6;
  const MonteCarloConfig mc{400, 2000, 9};
  const SignificanceLevel alpha(0.01);

  HypothesisPair same = make_hypotheses(p);
  same.data_source = same.null;
  const SuccessRateReport control = success_rate_curve(same, tomography_observables(), {100}, alpha, mc);
  CHECK(control.rates[0] <= 0.01 + 3.0 * std::sqrt(0.01 * 0.99 / 400) + 0.01);

  // matched totals: 9 x 111 vs 3 x 333
  const SuccessRateReport tomo = tomographic_success_rate(p, {111}, alpha, mc);
  const SuccessRateReport wit = distinction_success_rate(p, witness_observables(), {333}, alpha, mc);
  CHECK(tomo.shots_axis[0] == 999);
  CHECK(tomo.rates[0] > 0.9);
  CHECK(wit.rates[0] > 0.9);
}
