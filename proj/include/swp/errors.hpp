#pragma once

#include <stdexcept>
#include <string>

namespace swp {

/// Invalid user input: scenario parameters, configuration files, axes.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure could not produce a result (no root in bracket,
/// infeasible optimization, zero-probability outcome with a positive count).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix failed the density-matrix checks (Hermitian, unit trace, PSD).
class InvalidState : public std::invalid_argument {
 public:
  explicit InvalidState(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace swp
