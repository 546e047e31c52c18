#include "swp/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "swp/errors.hpp"
#include "swp/kernels.hpp"

namespace swp {

namespace {

// Random stream tags; the axis index goes in the low 32 bits.
constexpr std::uint64_t kNullLambdaStream = 1ULL << 32;
constexpr std::uint64_t kTestLambdaStream = 2ULL << 32;
constexpr std::uint64_t kWitnessEstimateStream = 3ULL << 32;

std::int64_t check_shots(std::int64_t n) {
  if (n < 1) throw ConfigError(fmt::format("shots per observable must be >= 1 (got {})", n));
  return n;
}

}  // namespace

SignificanceLevel::SignificanceLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError(fmt::format("significance level must lie in (0, 1) (got {})", alpha));
}

std::vector<double> llr_weights(const ProbabilityVector& p_a, const ProbabilityVector& p_0) {
  if (p_a.probs.size() != p_0.probs.size()) throw ConfigError("probability vectors differ in length");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> w(p_a.probs.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double a = p_a.probs[i];
    const double z = p_0.probs[i];
    if (a > 0.0 && z > 0.0)
      w[i] = 2.0 * (std::log(a) - std::log(z));
    else if (a > 0.0)
      w[i] = inf;
    else if (z > 0.0)
      w[i] = -inf;
    else
      w[i] = std::numeric_limits<double>::quiet_NaN();
  }
  return w;
}

double log_likelihood_ratio(const DataVector& n, const ProbabilityVector& p_a, const ProbabilityVector& p_0) {
  validate_data(n, p_a.blocks());
  const std::vector<double> w = llr_weights(p_a, p_0);
  for (std::size_t i = 0; i < w.size(); ++i)
    if (n.counts[i] > 0 && std::isnan(w[i]))
      throw NumericalError(fmt::format("outcome {} observed but forbidden by both hypotheses", i));
  // Opposite infinities cannot both occur: a forbids i, 0 forbids j, both seen.
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (n.counts[i] == 0 || std::isfinite(w[i])) continue;
    (w[i] > 0 ? pos : neg) += 1.0;
  }
  if (pos > 0 && neg > 0) throw NumericalError("data contradicts both hypotheses");
  return weighted_count(n, w);
}

double upper_quantile(std::vector<double> samples, SignificanceLevel alpha) {
  if (samples.empty()) throw ConfigError("quantile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double rank = std::ceil((1.0 - alpha.value()) * static_cast<double>(samples.size()));
  const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(samples.size())));
  return samples[k - 1];
}

double lambda_min(const ProbabilityVector& p_0, const ProbabilityVector& p_a, std::int64_t shots,
                  SignificanceLevel alpha, int trials, std::uint64_t seed) {
  if (trials < 100) throw ConfigError(fmt::format("lambda_min needs >= 100 trials (got {})", trials));
  const std::vector<double> w = llr_weights(p_a, p_0);
  return upper_quantile(weighted_count_batch(p_0, w, check_shots(shots), {seed, kNullLambdaStream}, trials), alpha);
}

HypothesisPair make_hypotheses(const ScenarioParams& p, double tau, double null_cp_scale) {
  validate(p);
  ScenarioParams alt = p;
  alt.gravity_on = true;
  ScenarioParams null = p;
  null.gravity_on = false;
  null.cp_scale = p.cp_scale * null_cp_scale;
  if (!(tau > 0.0)) tau = optimal_fall_time(alt, w1()).tau;
  HypothesisPair h{spin_state(alt, tau), spin_state(null, tau), {}, tau};
  h.data_source = h.alternative;
  return h;
}

SuccessRateReport success_rate_curve(const HypothesisPair& pair, const ObservableList& observables,
                                     const std::vector<std::int64_t>& shots_axis, SignificanceLevel alpha,
                                     const MonteCarloConfig& mc) {
  if (mc.trials < 1 || mc.null_trials < 100) throw ConfigError("need trials >= 1 and null_trials >= 100");
  const ProbabilityVector p_a = outcome_probabilities(pair.alternative, observables);
  const ProbabilityVector p_0 = outcome_probabilities(pair.null, observables);
  const ProbabilityVector source = outcome_probabilities(pair.data_source, observables);
  const std::vector<double> w = llr_weights(p_a, p_0);

  SuccessRateReport r;
  r.trials = mc.trials;
  r.tau = pair.tau;
  for (std::size_t k = 0; k < shots_axis.size(); ++k) {
    const std::int64_t shots = check_shots(shots_axis[k]);
    const double threshold =
        upper_quantile(weighted_count_batch(p_0, w, shots, {mc.seed, kNullLambdaStream | k}, mc.null_trials), alpha);
    const std::vector<double> lambdas =
        weighted_count_batch(source, w, shots, {mc.seed, kTestLambdaStream | k}, mc.trials);
    const auto hits = std::count_if(lambdas.begin(), lambdas.end(), [&](double l) { return l >= threshold; });
    r.shots_axis.push_back(shots * static_cast<std::int64_t>(observables.size()));
    r.rates.push_back(static_cast<double>(hits) / mc.trials);
    r.lambda_min_used.push_back(threshold);
  }
  return r;
}

SuccessRateReport distinction_success_rate(const ScenarioParams& p, const ObservableList& observables,
                                           const std::vector<std::int64_t>& shots_axis, SignificanceLevel alpha,
                                           const MonteCarloConfig& mc, bool control) {
  HypothesisPair pair = make_hypotheses(p);
  if (control) pair.data_source = pair.null;
  SuccessRateReport r = success_rate_curve(pair, observables, shots_axis, alpha, mc);
  r.gamma = p.dephasing_gamma;
  r.separation_d = p.separation_d;
  return r;
}

SuccessRateReport witness_negative_probability(const DensityMatrix& rho, const std::vector<std::int64_t>& shots_axis,
                                               int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const ProbabilityVector source = outcome_probabilities(rho, witness_observables());
  const std::array<double, 3> coefficients{-1.0, -1.0, -1.0};
  SuccessRateReport r;
  r.trials = trials;
  for (std::size_t k = 0; k < shots_axis.size(); ++k) {
    const std::int64_t shots = check_shots(shots_axis[k]);
    const std::vector<double> estimates =
        linear_estimate_batch(source, coefficients, 1.0, shots, {seed, kWitnessEstimateStream | k}, trials);
    const auto negative = std::count_if(estimates.begin(), estimates.end(), [](double v) { return v < 0.0; });
    r.shots_axis.push_back(3 * shots);
    r.rates.push_back(static_cast<double>(negative) / trials);
    r.lambda_min_used.push_back(0.0);
  }
  return r;
}

SuccessRateReport witness_negative_probability(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                               int trials, std::uint64_t seed) {
  const HypothesisPair pair = make_hypotheses(p);
  SuccessRateReport r = witness_negative_probability(pair.alternative, shots_axis, trials, seed);
  r.gamma = p.dephasing_gamma;
  r.separation_d = p.separation_d;
  r.tau = pair.tau;
  return r;
}

double match_alpha(const ScenarioParams& p, double tau, double bracket_lo, double bracket_hi) {
  if (!(tau > 0.0)) throw ConfigError(fmt::format("match_alpha needs tau > 0 (got {})", tau));
  if (!(bracket_lo < bracket_hi) || bracket_lo < 0.0) throw ConfigError("invalid match_alpha bracket");
  ScenarioParams alt = p;
  alt.gravity_on = true;
  const double target = witness_expectation(alt, tau, w1());
  const auto f = [&](double scale) {
    ScenarioParams null = p;
    null.gravity_on = false;
    null.cp_scale = p.cp_scale * scale;
    return witness_expectation(null, tau, w1()) - target;
  };
  const double f_lo = f(bracket_lo);
  const double f_hi = f(bracket_hi);
  if (f_lo == 0.0) return bracket_lo;
  if (f_hi == 0.0) return bracket_hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NumericalError(fmt::format(
        "match_alpha: no sign change in bracket [{}, {}] (f = {:.6g}, {:.6g})", bracket_lo, bracket_hi, f_lo, f_hi));
  }
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, bracket_lo, bracket_hi, f_lo, f_hi,
                                                        boost::math::tools::eps_tolerance<double>(50), max_iter);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

SuccessRateReport differential_success_rate(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                            SignificanceLevel alpha, const MonteCarloConfig& mc) {
  ScenarioParams alt = p;
  alt.gravity_on = true;
  const double tau = optimal_fall_time(alt, w1()).tau;
  const double scale = match_alpha(p, tau);
  SuccessRateReport r = success_rate_curve(make_hypotheses(p, tau, scale), witness_observables(), shots_axis, alpha, mc);
  r.gamma = p.dephasing_gamma;
  r.separation_d = p.separation_d;
  return r;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("spearman needs two equal series of length >= 2");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace swp
