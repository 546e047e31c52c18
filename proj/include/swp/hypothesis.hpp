#pragma once

// Likelihood-ratio tests between the gravity-free null hypothesis and the
// gravity-on alternative, driven by simulated Pauli-measurement records.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swp/measurement.hpp"
#include "swp/model.hpp"
#include "swp/witness.hpp"

namespace swp {

/// Probability of falsely rejecting the null; open interval (0, 1).
class SignificanceLevel {
 public:
  explicit SignificanceLevel(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

struct MonteCarloConfig {
  int trials = 1000;        // alternative-data draws per axis point
  int null_trials = 10000;  // null-data draws for each lambda_min
  std::uint64_t seed = 0;
};

struct SuccessRateReport {
  std::vector<std::int64_t> shots_axis;  // total bipartite Pauli measurements, l * N
  std::vector<double> rates;
  int trials = 0;
  std::vector<double> lambda_min_used;
  double gamma = 0.0;
  double separation_d = 0.0;
  double tau = 0.0;
};

/// 2 (log p_a - log p_0) per outcome. +inf where only p_0 vanishes, -inf where
/// p_a vanishes, NaN where both do.
std::vector<double> llr_weights(const ProbabilityVector& p_a, const ProbabilityVector& p_0);

/// lambda = 2 sum n_ij (log p_a,ij - log p_0,ij). A count on an outcome that
/// one hypothesis forbids gives +-infinity (infinite evidence); a count on an
/// outcome both forbid throws NumericalError.
double log_likelihood_ratio(const DataVector& n, const ProbabilityVector& p_a, const ProbabilityVector& p_0);

/// Nearest-rank empirical (1 - alpha)-quantile: sorted[ceil((1-alpha) T) - 1].
double upper_quantile(std::vector<double> samples, SignificanceLevel alpha);

/// (1 - alpha)-quantile of lambda over `trials` data vectors drawn from p_0.
double lambda_min(const ProbabilityVector& p_0, const ProbabilityVector& p_a, std::int64_t shots,
                  SignificanceLevel alpha, int trials, std::uint64_t seed);

/// The two states under comparison, and the state the test data comes from.
struct HypothesisPair {
  DensityMatrix alternative;
  DensityMatrix null;
  DensityMatrix data_source;  // normally == alternative
  double tau = 0.0;
};

/// Null: gravity off. Alternative: gravity on. Both at the alternative's
/// optimal W1 fall time (or `tau` if positive). `null_cp_scale` multiplies the
/// scenario's cp_scale in the null state only.
HypothesisPair make_hypotheses(const ScenarioParams& p, double tau = -1.0, double null_cp_scale = 1.0);

/// For each per-observable shot count N: lambda_min from null draws, then the
/// fraction of `mc.trials` draws from pair.data_source with lambda >= lambda_min.
SuccessRateReport success_rate_curve(const HypothesisPair& pair, const ObservableList& observables,
                                     const std::vector<std::int64_t>& shots_axis, SignificanceLevel alpha,
                                     const MonteCarloConfig& mc);

/// Witness-observable state distinction, null vs alternative.
/// With `control` set, test data is drawn from the null state instead; the
/// rate then estimates the false-positive rate alpha.
SuccessRateReport distinction_success_rate(const ScenarioParams& p, const ObservableList& observables,
                                           const std::vector<std::int64_t>& shots_axis, SignificanceLevel alpha,
                                           const MonteCarloConfig& mc, bool control = false);

/// Fraction of trials where the empirical W1 average 1 - <XX> - <ZY> - <YZ>
/// is negative, on the alternative state at its optimal fall time.
SuccessRateReport witness_negative_probability(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                               int trials, std::uint64_t seed);
SuccessRateReport witness_negative_probability(const DensityMatrix& rho, const std::vector<std::int64_t>& shots_axis,
                                               int trials, std::uint64_t seed);

/// Scale s such that the null state with CP coefficient s * alpha has the
/// same Tr(W1 rho) at tau as the alternative with nominal alpha. Bracketed
/// root solve; NumericalError when the bracket holds no sign change.
double match_alpha(const ScenarioParams& p, double tau, double bracket_lo = 0.5, double bracket_hi = 2.0);

/// distinction_success_rate against the null with CP rescaled by match_alpha.
SuccessRateReport differential_success_rate(const ScenarioParams& p, const std::vector<std::int64_t>& shots_axis,
                                            SignificanceLevel alpha, const MonteCarloConfig& mc);

/// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace swp
