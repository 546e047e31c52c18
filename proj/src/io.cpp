#include "swp/io.hpp"

#include <fstream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "swp/errors.hpp"

namespace swp {

using nlohmann::json;

std::string format_real(double v) { return fmt::format("{:.12g}", v == 0.0 ? 0.0 : v); }

json to_json(const DensityMatrix& rho) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rr = json::array();
    json ri = json::array();
    for (int j = 0; j < 4; ++j) {
      rr.push_back(rho(i, j).real());
      ri.push_back(rho(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

DensityMatrix density_matrix_from_json(const json& j) {
  try {
    Matrix4 m;
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != 4 || im.size() != 4) throw ConfigError("density matrix needs 4 rows");
    for (int i = 0; i < 4; ++i) {
      if (re[i].size() != 4 || im[i].size() != 4) throw ConfigError("density matrix needs 4 columns");
      for (int k = 0; k < 4; ++k) m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
    }
    return DensityMatrix(m);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad density matrix JSON: {}", e.what()));
  }
}

ScenarioParams scenario_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  static const std::set<std::string> known = {
      "mass",         "separation_d",    "half_split_delta", "trap_omega", "mean_occupation_nbar",
      "dephasing_gamma", "sphere_radius_R", "permittivity_eps", "gravity_on", "cp_scale"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError(fmt::format("unknown scenario field '{}'", key));

  ScenarioParams p;
  try {
    const auto read = [&](const char* key, double& field) {
      if (j.contains(key)) field = j.at(key).get<double>();
    };
    read("mass", p.mass);
    read("separation_d", p.separation_d);
    read("half_split_delta", p.half_split_delta);
    read("trap_omega", p.trap_omega);
    read("mean_occupation_nbar", p.mean_occupation_nbar);
    read("dephasing_gamma", p.dephasing_gamma);
    read("sphere_radius_R", p.sphere_radius_R);
    read("permittivity_eps", p.permittivity_eps);
    read("cp_scale", p.cp_scale);
    if (j.contains("gravity_on")) p.gravity_on = j.at("gravity_on").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("bad scenario field: {}", e.what()));
  }
  validate(p);
  return p;
}

json to_json(const ScenarioParams& p) {
  return {{"mass", p.mass},
          {"separation_d", p.separation_d},
          {"half_split_delta", p.half_split_delta},
          {"trap_omega", p.trap_omega},
          {"mean_occupation_nbar", p.mean_occupation_nbar},
          {"dephasing_gamma", p.dephasing_gamma},
          {"sphere_radius_R", p.sphere_radius_R},
          {"permittivity_eps", p.permittivity_eps},
          {"gravity_on", p.gravity_on},
          {"cp_scale", p.cp_scale}};
}

json to_json(const LoopholeResult& r) {
  json angles = json::array();
  for (int i = 0; i < CholeskyAngles::size; ++i) angles.push_back(r.angles[i]);
  return {{"state", to_json(r.state)},
          {"nll", r.nll},
          {"negativity", r.negativity},
          {"negativity_bound", r.negativity_bound},
          {"constraint_satisfied", r.constraint_satisfied},
          {"nll_reference", r.nll_reference},
          {"feasible_restarts", r.feasible_restarts},
          {"angles", angles}};
}

void write_pea_csv(std::ostream& os, const std::vector<PEAReport>& rows) {
  os << "tau_s,theta_magnitude,phase_correction_rad,decoherence_factor_zeroT,decoherence_factor_thermal,"
        "exponent_zeroT,exponent_thermal,kappa\n";
  for (const auto& r : rows) {
    os << format_real(r.tau) << ',' << format_real(r.theta_magnitude) << ',' << format_real(r.phase_correction) << ','
       << format_real(r.decoherence_factor_zeroT) << ',' << format_real(r.decoherence_factor_thermal) << ','
       << format_real(r.decoherence_exponent_zeroT) << ',' << format_real(r.decoherence_exponent_thermal) << ','
       << format_real(r.kappa) << '\n';
  }
}

void write_scan_csv(std::ostream& os, const std::vector<WitnessScan>& scans) {
  os << "tau_s,value,gamma\n";
  for (const auto& s : scans)
    for (std::size_t i = 0; i < s.taus.size(); ++i)
      os << format_real(s.taus[i]) << ',' << format_real(s.values[i]) << ',' << format_real(s.gamma) << '\n';
}

void write_success_csv(std::ostream& os, const std::vector<SuccessRateReport>& reports) {
  os << "total_measurements,rate,lambda_min,trials,gamma,d_m\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.shots_axis.size(); ++i)
      os << r.shots_axis[i] << ',' << format_real(r.rates[i]) << ',' << format_real(r.lambda_min_used[i]) << ','
         << r.trials << ',' << format_real(r.gamma) << ',' << format_real(r.separation_d) << '\n';
}

void write_tomography_csv(std::ostream& os, const std::vector<ExceedanceResult>& results) {
  os << "shots,hypothesis,trial,negativity,fidelity_to_truth\n";
  for (const auto& r : results)
    for (const auto& t : r.trials)
      os << r.total_shots << ',' << (t.alternative ? "alternative" : "null") << ',' << t.trial << ','
         << format_real(t.negativity) << ',' << format_real(t.fidelity_to_truth) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("cannot parse '{}': {}", path.string(), e.what()));
  }
}

}  // namespace swp
