#pragma once

#include <stdexcept>
#include <string>

namespace fogopt {

/// Invalid or inconsistent configuration input.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The closed-form optimum falls outside (0,1): the configuration is
/// beyond the regime the dimensioning formulas support.
class out_of_model_error : public std::runtime_error {
public:
  explicit out_of_model_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime failure inside a Monte Carlo experiment.
class simulation_error : public std::runtime_error {
public:
  explicit simulation_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fogopt
