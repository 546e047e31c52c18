#include "swp/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "swp/errors.hpp"
#include "swp/kernels.hpp"
#include "swp/witness.hpp"

namespace swp {

namespace {

constexpr std::uint64_t kTomographyNullStream = 4ULL << 32;
constexpr std::uint64_t kTomographyAltStream = 5ULL << 32;
constexpr std::uint64_t kFidelityStream = 6ULL << 32;

// Eigenvectors of every projector, flattened in data-vector order.
std::vector<Vector4> projector_vectors(const ObservableList& observables) {
  std::vector<Vector4> out;
  out.reserve(4 * observables.size());
  for (const auto& b : measurement_bases(observables))
    for (const auto& v : b.vectors) out.push_back(v);
  return out;
}

double projector_probability(const Matrix4& rho, const Vector4& v) { return v.dot(rho * v).real(); }

Matrix4 r_operator_impl(const Matrix4& rho, const DataVector& n, const std::vector<Vector4>& vectors,
                        const ObservableList& observables) {
  Matrix4 r = Matrix4::Zero();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (n.counts[i] == 0) continue;
    const double pr = projector_probability(rho, vectors[i]);
    if (!(pr > 0.0)) {
      throw NumericalError(fmt::format("R operator: outcome {} of {} has {} counts but probability {}", i % 4,
                                       observables[i / 4].label(), n.counts[i], pr));
    }
    r.noalias() += (static_cast<double>(n.counts[i]) / pr) * (vectors[i] * vectors[i].adjoint());
  }
  return r / static_cast<double>(n.total());
}

double log_likelihood_impl(const Matrix4& rho, const DataVector& n, const std::vector<Vector4>& vectors) {
  double ll = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (n.counts[i] == 0) continue;
    const double pr = projector_probability(rho, vectors[i]);
    if (!(pr > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += static_cast<double>(n.counts[i]) * std::log(pr);
  }
  return ll;
}

}  // namespace

Matrix4 r_operator(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables) {
  validate_data(n, observables.size());
  return r_operator_impl(rho.matrix(), n, projector_vectors(observables), observables);
}

Matrix4 r_operator(const DensityMatrix& rho, const DataVector& n, const TomographySetup& setup) {
  return r_operator(rho, n, setup.observables);
}

double log_likelihood(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables) {
  validate_data(n, observables.size());
  return log_likelihood_impl(rho.matrix(), n, projector_vectors(observables));
}

DensityMatrix mle_reconstruct(const DataVector& n, const ObservableList& observables, const MLEConfig& cfg,
                              std::vector<double>* loglik_trace) {
  if (cfg.iterations < 1) throw ConfigError("MLE needs at least one iteration");
  validate_data(n, observables.size());
  if (n.total() == 0) throw ConfigError("MLE needs at least one count");
  const auto vectors = projector_vectors(observables);

  Matrix4 rho = Matrix4::Identity() * 0.25;
  if (loglik_trace) {
    loglik_trace->clear();
    loglik_trace->push_back(log_likelihood_impl(rho, n, vectors));
  }
  for (int k = 0; k < cfg.iterations; ++k) {
    const Matrix4 r = r_operator_impl(rho, n, vectors, observables);
    Matrix4 next = r * rho * r;
    next = 0.5 * (next + next.adjoint());
    rho = next / next.trace().real();
    if (loglik_trace) loglik_trace->push_back(log_likelihood_impl(rho, n, vectors));
  }
  return DensityMatrix::trusted(rho);
}

DensityMatrix mle_reconstruct(const DataVector& n, const TomographySetup& setup, const MLEConfig& cfg,
                              std::vector<double>* loglik_trace) {
  return mle_reconstruct(n, setup.observables, cfg, loglik_trace);
}

SuccessRateReport tomographic_success_rate(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                           SignificanceLevel alpha, const MonteCarloConfig& mc) {
  SuccessRateReport r = success_rate_curve(make_hypotheses(p), tomography_observables(), shots_axis, alpha, mc);
  r.gamma = p.dephasing_gamma;
  r.separation_d = p.separation_d;
  return r;
}

ExceedanceResult negativity_exceedance(const ScenarioParams& p, std::int64_t total_shots, int trials,
                                       std::uint64_t seed, const MLEConfig& cfg) {
  if (total_shots <= 0 || total_shots % 9 != 0)
    throw ConfigError(fmt::format("tomography shots must be a positive multiple of 9 (got {})", total_shots));
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const std::int64_t shots = total_shots / 9;
  const HypothesisPair pair = make_hypotheses(p);
  const ObservableList obs = tomography_observables();

  ExceedanceResult out;
  out.total_shots = total_shots;
  out.tau = pair.tau;

  std::vector<double> null_neg;
  std::vector<double> alt_neg;
  for (bool alternative : {false, true}) {
    const DensityMatrix& truth = alternative ? pair.alternative : pair.null;
    const auto recon = reconstruction_batch(outcome_probabilities(truth, obs), shots,
                                            {seed, alternative ? kTomographyAltStream : kTomographyNullStream},
                                            trials, cfg.iterations);
    for (int t = 0; t < trials; ++t) {
      const double n = negativity(recon[t]);
      out.trials.push_back({alternative, t, n, fidelity(recon[t], truth)});
      (alternative ? alt_neg : null_neg).push_back(n);
    }
  }
  out.threshold = upper_quantile(null_neg, SignificanceLevel(0.01));
  const auto above = std::count_if(alt_neg.begin(), alt_neg.end(), [&](double v) { return v > out.threshold; });
  out.rate = static_cast<double>(above) / trials;
  return out;
}

std::vector<double> reconstruction_fidelities(const DensityMatrix& truth, std::int64_t shots_per_observable,
                                              int trials, std::uint64_t seed, const MLEConfig& cfg) {
  const auto recon = reconstruction_batch(outcome_probabilities(truth, tomography_observables()),
                                          shots_per_observable, {seed, kFidelityStream}, trials, cfg.iterations);
  std::vector<double> f;
  f.reserve(recon.size());
  for (const auto& r : recon) f.push_back(fidelity(r, truth));
  return f;
}

}  // namespace swp
