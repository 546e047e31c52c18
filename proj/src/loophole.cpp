#include "swp/loophole.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <fmt/format.h>

#include "swp/errors.hpp"
#include "swp/kernels.hpp"

namespace swp {

namespace {

constexpr std::uint64_t kRestartStream = 7ULL << 32;
constexpr double kInf = std::numeric_limits<double>::infinity();
// The subproblems aim slightly inside the feasible set so that the final
// point passes the exact check.
constexpr double kInteriorShift = 1e-7;
constexpr double kRestoreSlack = 1e-12;

using Vec = Eigen::Matrix<double, CholeskyAngles::size, 1>;
using Mat = Eigen::Matrix<double, CholeskyAngles::size, CholeskyAngles::size>;

CholeskyAngles to_angles(const Vec& x) {
  CholeskyAngles a;
  for (int i = 0; i < CholeskyAngles::size; ++i) a[i] = x(i);
  return a;
}

// Negativity when the partial transpose has negative eigenvalues, otherwise
// minus its smallest eigenvalue. Continuous, and negative inside the PPT set,
// so a bound of zero still has interior points.
double signed_negativity(const Matrix4& rho) {
  const Eigen::Vector4d ev = hermitian_eigen(partial_transpose(rho)).values;
  if (ev(0) >= 0.0) return -ev(0);
  double n = 0.0;
  for (int i = 0; i < 4; ++i)
    if (ev(i) < 0.0) n -= ev(i);
  return n;
}

struct Problem {
  std::vector<Vector4> vectors;
  std::vector<double> counts;
  double total = 0.0;
  double bound = 0.0;  // negativity upper bound used by the subproblems
  bool constrained = true;

  // NLL per count, and signed negativity, of the state at x.
  std::pair<double, double> evaluate(const Vec& x) const {
    const Matrix4 L = cholesky_factor(to_angles(x));
    const Matrix4 rho = L * L.adjoint();
    double nll = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (counts[i] == 0.0) continue;
      const double pr = vectors[i].dot(rho * vectors[i]).real();
      if (!(pr > 0.0)) return {kInf, 0.0};
      nll -= counts[i] * std::log(pr);
    }
    return {nll / total, constrained ? signed_negativity(rho) : 0.0};
  }
};

// Powell-Hestenes-Rockafellar augmented Lagrangian for c(x) = N(x) - bound <= 0.
struct Lagrangian {
  const Problem& problem;
  double multiplier = 0.0;
  double penalty = 10.0;

  double operator()(const Vec& x) const {
    const auto [f, neg] = problem.evaluate(x);
    if (!std::isfinite(f) || !problem.constrained) return f;
    const double c = neg - problem.bound;
    const double shifted = std::max(0.0, multiplier + penalty * c);
    return f + (shifted * shifted - multiplier * multiplier) / (2.0 * penalty);
  }
};

template <class F>
Vec central_gradient(const F& f, const Vec& x, double h) {
  Vec g;
  Vec probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const double up = f(probe);
    probe(i) = x(i) - h;
    const double down = f(probe);
    probe(i) = x(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

// BFGS with Armijo backtracking. Accepted steps strictly decrease f.
template <class F>
Vec bfgs(const F& f, Vec x, int max_iterations, double h) {
  double fx = f(x);
  if (!std::isfinite(fx)) return x;
  Vec g = central_gradient(f, x, h);
  Mat H = Mat::Identity();
  for (int it = 0; it < max_iterations; ++it) {
    if (!g.allFinite() || g.norm() < 1e-9) break;
    Vec dir = -H * g;
    if (dir.dot(g) >= 0.0) {
      H.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    Vec next;
    double fnext = kInf;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      next = x + step * dir;
      fnext = f(next);
      if (std::isfinite(fnext) && fnext <= fx + 1e-4 * step * dir.dot(g)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || fx - fnext < 1e-15 * (1.0 + std::abs(fx))) break;
    const Vec gnext = central_gradient(f, next, h);
    const Vec s = next - x;
    const Vec y = gnext - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Mat I = Mat::Identity();
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    x = next;
    fx = fnext;
    g = gnext;
  }
  return x;
}

struct RestartOutcome {
  Vec x;
  double nll = kInf;  // per count
  double negativity = 0.0;
  bool feasible = false;
};

// Penalty iterations can stall a hair outside the bound where the partial
// transpose spectrum is degenerate. Mixing with I/4 lowers the negativity
// monotonically; take the smallest admixture (up to 1%) that lands inside.
Vec restore_feasibility(const Vec& x, double bound) {
  const Matrix4 rho = cholesky_to_state(to_angles(x)).matrix();
  const auto mixed = [&](double t) -> Matrix4 { return (1.0 - t) * rho + t * Matrix4::Identity() / 4.0; };
  const double target = bound - kRestoreSlack;
  if (signed_negativity(rho) <= target) return x;
  constexpr double kMaxAdmixture = 0.01;
  if (signed_negativity(mixed(kMaxAdmixture)) > target) return x;
  double lo = 0.0, hi = kMaxAdmixture;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (signed_negativity(mixed(mid)) <= target ? hi : lo) = mid;
  }
  const CholeskyAngles a = cholesky_angles(DensityMatrix::trusted(mixed(hi)));
  Vec out;
  for (int i = 0; i < CholeskyAngles::size; ++i) out(i) = a[i];
  return out;
}

RestartOutcome run_restart(const Problem& problem, const OptimizationConfig& cfg, double exact_bound, Vec x) {
  Lagrangian lagrangian{problem};
  double last_violation = kInf;
  const int outer = problem.constrained ? 40 : 1;
  for (int k = 0; k < outer; ++k) {
    x = bfgs(lagrangian, x, cfg.max_iterations, cfg.gradient_step);
    if (!problem.constrained) break;
    const double c = problem.evaluate(x).second - problem.bound;
    lagrangian.multiplier = std::max(0.0, lagrangian.multiplier + lagrangian.penalty * c);
    const double violation = std::max(0.0, c);
    if (violation == 0.0 && k > 0 && std::abs(lagrangian.multiplier * c) < 1e-10) break;
    if (violation > 0.25 * last_violation) lagrangian.penalty = std::min(lagrangian.penalty * 10.0, 1e10);
    last_violation = violation;
  }
  if (problem.constrained) x = restore_feasibility(x, exact_bound);
  RestartOutcome out{x, problem.evaluate(x).first, negativity(cholesky_to_state(to_angles(x))), false};
  out.feasible = std::isfinite(out.nll) && (!problem.constrained || out.negativity <= exact_bound);
  return out;
}

}  // namespace

void validate(const OptimizationConfig& cfg) {
  if (cfg.max_iterations < 1 || cfg.restarts < 1 || !(cfg.gradient_step > 0.0) || !(cfg.constraint_margin >= 0.0))
    throw ConfigError("optimization config needs positive iterations, restarts, gradient step and margin >= 0");
}

double neg_log_likelihood(const DensityMatrix& rho, const DataVector& n, const ObservableList& observables) {
  validate_data(n, observables.size());
  const auto bases = measurement_bases(observables);
  double nll = 0.0;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    for (int j = 0; j < 4; ++j) {
      const auto c = n.counts[4 * k + j];
      if (c == 0) continue;
      const double pr = bases[k].vectors[j].dot(rho.matrix() * bases[k].vectors[j]).real();
      if (!(pr > 0.0)) return kInf;
      nll -= static_cast<double>(c) * std::log(pr);
    }
  }
  return nll;
}

double neg_log_likelihood(const CholeskyAngles& angles, const DataVector& n, const ObservableList& observables) {
  return neg_log_likelihood(cholesky_to_state(angles), n, observables);
}

LoopholeResult find_loophole_state(const DataVector& n, const ObservableList& observables,
                                   const DensityMatrix& rho_null, const DensityMatrix& rho_reference,
                                   const OptimizationConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  validate_data(n, observables.size());
  if (n.total() == 0) throw ConfigError("loophole search needs at least one count");

  const double exact_bound = negativity(rho_null) - cfg.constraint_margin;
  Problem problem;
  for (const auto& b : measurement_bases(observables))
    for (const auto& v : b.vectors) problem.vectors.push_back(v);
  for (auto c : n.counts) problem.counts.push_back(static_cast<double>(c));
  problem.total = static_cast<double>(n.total());
  problem.constrained = cfg.constrained;
  problem.bound = exact_bound - kInteriorShift;
  if (cfg.constrained && exact_bound < 0.0)
    throw ConfigError(fmt::format("negativity bound {} is negative: margin exceeds N(rho_null)", exact_bound));

  const auto outcomes = map_indices<RestartOutcome>(
      cfg.restarts,
      [&](std::int64_t r) {
        Rng rng(seed, kRestartStream, static_cast<std::uint64_t>(r));
        Vec x0;
        for (int i = 0; i < 9; ++i) x0(i) = rng.uniform(0.0, std::numbers::pi);
        for (int i = 9; i < CholeskyAngles::size; ++i) x0(i) = rng.uniform(0.0, 2.0 * std::numbers::pi);
        return run_restart(problem, cfg, exact_bound, x0);
      },
      Execution::parallel);

  std::optional<RestartOutcome> best;
  int feasible = 0;
  double least_violation = kInf;
  for (const auto& o : outcomes) {
    least_violation = std::min(least_violation, o.negativity - exact_bound);
    if (!o.feasible) continue;
    ++feasible;
    if (!best || o.nll < best->nll || (o.nll == best->nll && o.negativity < best->negativity)) best = o;
  }
  if (!best) {
    throw NumericalError(fmt::format(
        "loophole search: no feasible state in {} restarts (bound {:.6g}, smallest violation {:.3g})", cfg.restarts,
        exact_bound, least_violation));
  }

  LoopholeResult result;
  result.angles = to_angles(best->x);
  result.state = cholesky_to_state(result.angles);
  result.nll = neg_log_likelihood(result.state, n, observables);
  result.negativity = negativity(result.state);
  result.negativity_bound = exact_bound;
  result.constraint_satisfied = cfg.constrained ? result.negativity <= exact_bound : true;
  result.nll_reference = neg_log_likelihood(rho_reference, n, observables);
  result.feasible_restarts = feasible;
  return result;
}

LoopholeVerification verify_loophole(const LoopholeResult& result, const DensityMatrix& rho_a,
                                     const DensityMatrix& rho_null, const DataVector& n,
                                     const ObservableList& observables) {
  LoopholeVerification v;
  v.null_negativity = negativity(rho_null);
  v.result_negativity = negativity(result.state);
  v.negativity_ordered = v.null_negativity > v.result_negativity;
  v.nll_result = neg_log_likelihood(result.state, n, observables);
  v.nll_reference = neg_log_likelihood(rho_a, n, observables);
  v.at_least_as_likely = v.nll_result <= v.nll_reference;
  v.state = check_state(result.state.matrix());
  return v;
}

Matrix4 printed_loophole_state() {
  using C = Complex;
  Matrix4 m;
  m << C(0.256, 0), C(0.009, 0.012), C(0.042, -0.174), C(0.212, 0.010),
       C(0.009, -0.012), C(0.244, 0), C(0.109, -0.022), C(-0.008, 0.004),
       C(0.042, 0.174), C(0.109, 0.023), C(0.246, 0), C(0.017, 0.161),
       C(0.212, -0.011), C(-0.008, -0.004), C(0.017, -0.161), C(0.254, 0);
  return m;
}

PrintedStateCheck check_printed_state(const Matrix4& m) {
  const Matrix4 h = 0.5 * (m + m.adjoint());
  PrintedStateCheck c;
  c.trace = h.trace().real();
  c.min_eigenvalue = hermitian_eigen(h).values(0);
  const Eigen::Vector4d pt = hermitian_eigen(partial_transpose(h)).values;
  for (int i = 0; i < 4; ++i)
    if (pt(i) < 0.0) c.negativity -= pt(i);
  c.trace_ok = std::abs(c.trace - 1.0) <= 1e-3;
  c.psd_ok = c.min_eigenvalue >= -2e-3;
  c.negativity_ok = std::abs(c.negativity - 0.104) <= 0.003;
  return c;
}

}  // namespace swp
