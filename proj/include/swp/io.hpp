#pragma once

// JSON and CSV serialization. Floats are written with 12 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swp/loophole.hpp"
#include "swp/model.hpp"
#include "swp/hypothesis.hpp"
#include "swp/quantum_core.hpp"
#include "swp/tomography.hpp"
#include "swp/witness.hpp"

namespace swp {

/// "%.12g".
std::string format_real(double v);

/// {"re": [[4x4]], "im": [[4x4]]}, row-major.
nlohmann::json to_json(const DensityMatrix& rho);
/// Validates the result as a density matrix.
DensityMatrix density_matrix_from_json(const nlohmann::json& j);

/// Unknown keys are rejected; missing keys keep their defaults. Validates.
ScenarioParams scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioParams& p);

nlohmann::json to_json(const LoopholeResult& r);

void write_pea_csv(std::ostream& os, const std::vector<PEAReport>& rows);
/// Header `tau_s,value,gamma`; several scans are concatenated.
void write_scan_csv(std::ostream& os, const std::vector<WitnessScan>& scans);
/// Header `total_measurements,rate,lambda_min,trials,gamma,d_m`.
void write_success_csv(std::ostream& os, const std::vector<SuccessRateReport>& reports);
/// Header `shots,hypothesis,trial,negativity,fidelity_to_truth`.
void write_tomography_csv(std::ostream& os, const std::vector<ExceedanceResult>& results);

/// Reads a whole file; throws ConfigError if it cannot be opened or parsed.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace swp
