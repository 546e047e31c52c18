#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "swp/errors.hpp"
#include "swp/hypothesis.hpp"
#include "swp/io.hpp"
#include "swp/loophole.hpp"
#include "swp/measurement.hpp"
#include "swp/model.hpp"
#include "swp/tomography.hpp"
#include "swp/witness.hpp"

namespace swp::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out = ".";
};

// Parsed --config file plus flag overrides.
struct RunConfig {
  ScenarioParams scenario;
  json options = json::object();
  std::uint64_t seed = 0;
  fs::path out;

  template <class T>
  T get(const char* key, T fallback) const {
    if (!options.contains(key)) return fallback;
    try {
      return options.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("config field '{}': {}", key, e.what()));
    }
  }
};

const std::set<std::string> kKnownKeys = {
    "scenario",   "seed",        "taus",   "tau_max",     "tau_points", "gammas",     "shots",
    "alpha",      "trials",      "null_trials", "control", "observables", "tomography_shots",
    "mle_iterations", "loophole"};

RunConfig load(const Flags& flags) {
  RunConfig cfg;
  if (!flags.config.empty()) {
    json j = read_json_file(flags.config);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items())
      if (!kKnownKeys.count(key)) throw ConfigError(fmt::format("unknown config field '{}'", key));
    if (j.contains("scenario")) cfg.scenario = scenario_from_json(j.at("scenario"));
    cfg.options = j;
  }
  validate(cfg.scenario);
  cfg.seed = cfg.get<std::uint64_t>("seed", 0);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.trials) {
    if (*flags.trials < 1) throw ConfigError("--trials must be >= 1");
    cfg.options["trials"] = *flags.trials;
  }
  cfg.out = flags.out;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out))
    throw ConfigError(fmt::format("output directory '{}' is not writable", cfg.out.string()));
  return cfg;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  const fs::path path = cfg.out / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  std::cout << "wrote " << path.string() << '\n';
  return os;
}

std::vector<double> gammas_of(const RunConfig& cfg, std::vector<double> fallback) {
  auto g = cfg.get<std::vector<double>>("gammas", std::move(fallback));
  if (g.empty()) throw ConfigError("'gammas' must not be empty");
  for (double v : g)
    if (!(v >= 0.0)) throw ConfigError("'gammas' entries must be >= 0");
  return g;
}

std::vector<std::int64_t> shots_of(const RunConfig& cfg, const char* key, std::vector<std::int64_t> fallback) {
  auto s = cfg.get<std::vector<std::int64_t>>(key, std::move(fallback));
  if (s.empty()) throw ConfigError(fmt::format("'{}' must not be empty", key));
  for (auto v : s)
    if (v < 1) throw ConfigError(fmt::format("'{}' entries must be >= 1", key));
  return s;
}

MonteCarloConfig monte_carlo_of(const RunConfig& cfg) {
  MonteCarloConfig mc;
  mc.trials = cfg.get<int>("trials", mc.trials);
  mc.null_trials = cfg.get<int>("null_trials", mc.null_trials);
  mc.seed = cfg.seed;
  if (mc.trials < 1 || mc.null_trials < 100) throw ConfigError("need trials >= 1 and null_trials >= 100");
  return mc;
}

ScenarioParams with_gamma(ScenarioParams p, double gamma) {
  p.dephasing_gamma = gamma;
  return p;
}

void cmd_pea(const RunConfig& cfg) {
  std::vector<PEAReport> rows;
  for (double tau : cfg.get<std::vector<double>>("taus", {0.0, 1.0, 10.0})) {
    if (!(tau >= 0.0)) throw ConfigError("'taus' entries must be >= 0");
    rows.push_back(pea_corrections(cfg.scenario, tau));
  }
  auto os = open_output(cfg, "pea.csv");
  write_pea_csv(os, rows);
}

void cmd_scan_witness(const RunConfig& cfg) {
  const double tau_max = cfg.get<double>("tau_max", 30.0);
  const int points = cfg.get<int>("tau_points", 601);
  const std::vector<double> taus = tau_grid(tau_max, points);
  std::vector<WitnessScan> w0_scans, w1_scans, neg_scans;
  for (double g : gammas_of(cfg, {0.0, 0.01, 0.02, 0.03})) {
    const ScenarioParams p = with_gamma(cfg.scenario, g);
    w0_scans.push_back(scan_witness(p, w0(), taus));
    w1_scans.push_back(scan_witness(p, w1(), taus));
    neg_scans.push_back(scan_negativity(p, taus));
  }
  auto a = open_output(cfg, "w0_scan.csv");
  write_scan_csv(a, w0_scans);
  auto b = open_output(cfg, "w1_scan.csv");
  write_scan_csv(b, w1_scans);
  auto c = open_output(cfg, "negativity_scan.csv");
  write_scan_csv(c, neg_scans);
}

void cmd_success(const RunConfig& cfg) {
  const std::string which = cfg.get<std::string>("observables", "witness");
  if (which != "witness" && which != "tomography")
    throw ConfigError("'observables' must be \"witness\" or \"tomography\"");
  const ObservableList obs = which == "witness" ? witness_observables() : tomography_observables();
  const SignificanceLevel alpha(cfg.get<double>("alpha", 0.01));
  const bool control = cfg.get<bool>("control", false);
  const auto shots = shots_of(cfg, "shots", {10, 33, 100, 333, 1000});
  std::vector<SuccessRateReport> reports;
  for (double g : gammas_of(cfg, {cfg.scenario.dephasing_gamma}))
    reports.push_back(distinction_success_rate(with_gamma(cfg.scenario, g), obs, shots, alpha, monte_carlo_of(cfg),
                                               control));
  auto os = open_output(cfg, "success.csv");
  write_success_csv(os, reports);
}

void cmd_witneg(const RunConfig& cfg) {
  const auto shots = shots_of(cfg, "shots", {10, 33, 100, 333, 1000});
  const int trials = cfg.get<int>("trials", 1000);
  std::vector<SuccessRateReport> reports;
  for (double g : gammas_of(cfg, {cfg.scenario.dephasing_gamma}))
    reports.push_back(witness_negative_probability(with_gamma(cfg.scenario, g), shots, trials, cfg.seed));
  auto os = open_output(cfg, "witneg.csv");
  write_success_csv(os, reports);
}

void cmd_differential(const RunConfig& cfg) {
  const SignificanceLevel alpha(cfg.get<double>("alpha", 0.01));
  const auto shots = shots_of(cfg, "shots", {100, 333, 1000, 2000, 3333});
  const MonteCarloConfig mc = monte_carlo_of(cfg);
  const SuccessRateReport nominal = distinction_success_rate(cfg.scenario, witness_observables(), shots, alpha, mc);
  const SuccessRateReport matched = differential_success_rate(cfg.scenario, shots, alpha, mc);
  {
    auto os = open_output(cfg, "differential_nominal.csv");
    write_success_csv(os, {nominal});
  }
  {
    auto os = open_output(cfg, "differential.csv");
    write_success_csv(os, {matched});
  }
  auto info = open_output(cfg, "differential_match.json");
  info << json{{"tau_s", matched.tau}, {"cp_scale_matched", match_alpha(cfg.scenario, matched.tau)}}
              .dump(2)
       << '\n';
}

void cmd_tomo(const RunConfig& cfg) {
  const auto totals = shots_of(cfg, "tomography_shots", {9, 90, 900, 9000});
  const int trials = cfg.get<int>("trials", 1000);
  const MLEConfig mle{cfg.get<int>("mle_iterations", 100)};
  if (mle.iterations < 1) throw ConfigError("'mle_iterations' must be >= 1");
  for (auto t : totals)
    if (t % 9 != 0) throw ConfigError(fmt::format("tomography shots must be multiples of 9 (got {})", t));

  auto summary = open_output(cfg, "tomo_summary.csv");
  summary << "shots,gamma,d_m,tau_s,threshold,rate\n";
  for (double g : gammas_of(cfg, {cfg.scenario.dephasing_gamma})) {
    const ScenarioParams p = with_gamma(cfg.scenario, g);
    std::vector<ExceedanceResult> results;
    for (auto total : totals) {
      results.push_back(negativity_exceedance(p, total, trials, cfg.seed, mle));
      const auto& r = results.back();
      summary << total << ',' << format_real(g) << ',' << format_real(p.separation_d) << ',' << format_real(r.tau)
              << ',' << format_real(r.threshold) << ',' << format_real(r.rate) << '\n';
    }
    auto os = open_output(cfg, "tomo_gamma" + format_real(g) + ".csv");
    write_tomography_csv(os, results);
  }
}

void cmd_loophole(const RunConfig& cfg) {
  const json opts = cfg.options.value("loophole", json::object());
  OptimizationConfig oc;
  std::int64_t shots = 1000;
  try {
    oc.max_iterations = opts.value("max_iterations", oc.max_iterations);
    oc.gradient_step = opts.value("gradient_step", oc.gradient_step);
    oc.constraint_margin = opts.value("constraint_margin", oc.constraint_margin);
    oc.restarts = opts.value("restarts", oc.restarts);
    shots = opts.value("shots", shots);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("loophole options: {}", e.what()));
  }
  validate(oc);

  const HypothesisPair pair = make_hypotheses(cfg.scenario);
  const ObservableList obs = witness_observables();
  const DataVector data = simulate_measurements(pair.alternative, obs, shots, cfg.seed);
  const LoopholeResult result = find_loophole_state(data, obs, pair.null, pair.alternative, oc, cfg.seed);
  const LoopholeVerification v = verify_loophole(result, pair.alternative, pair.null, data, obs);
  const PrintedStateCheck printed = check_printed_state(printed_loophole_state());

  json out = to_json(result);
  out["tau_s"] = pair.tau;
  out["shots_per_observable"] = shots;
  out["null_negativity"] = v.null_negativity;
  out["alternative_negativity"] = negativity(pair.alternative);
  out["verification"] = {{"negativity_ordered", v.negativity_ordered},
                         {"at_least_as_likely", v.at_least_as_likely},
                         {"valid_state", v.state.ok()}};
  out["printed_state_check"] = {{"trace", printed.trace},
                                {"min_eigenvalue", printed.min_eigenvalue},
                                {"negativity", printed.negativity},
                                {"ok", printed.ok()}};
  auto os = open_output(cfg, "loophole.json");
  os << out.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Spin witness protocol analysis driver"};
  app.require_subcommand(1);
  Flags flags;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Random seed (overrides config)");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--trials", flags.trials, "Monte Carlo trials (overrides config)");
    return sub;
  };
  struct Command {
    const char* name;
    const char* help;
    void (*fn)(const RunConfig&);
  };
  const Command commands[] = {
      {"pea", "Position-eigenstate-approximation corrections over a tau list", cmd_pea},
      {"scan-witness", "W0, W1 and negativity against free-fall time", cmd_scan_witness},
      {"success", "Likelihood-ratio state distinction success rates", cmd_success},
      {"witneg", "Probability of a negative empirical W1 average", cmd_witneg},
      {"differential", "Success rates against the alpha-matched null", cmd_differential},
      {"tomo", "Tomographic negativity exceedance table", cmd_tomo},
      {"loophole", "Constrained search for a witness loophole state", cmd_loophole},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) subs.emplace_back(add_common(app.add_subcommand(c.name, c.help)), &c);

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) cmd->fn(load(flags));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidState& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace swp::cli
