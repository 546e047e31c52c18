#pragma once

#include <string>
#include <vector>

namespace swp::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalFailure = 3;

/// Runs the driver with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args);

}  // namespace swp::cli
