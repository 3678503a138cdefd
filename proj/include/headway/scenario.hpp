#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "headway/environment.hpp"
#include "headway/prediction.hpp"
#include "headway/simulation.hpp"
#include "headway/unicycle.hpp"

namespace headway {

/// Everything needed to run one episode. See docs/scenario_format.md.
struct Scenario {
  std::string name;
  Environment environment;
  ReferencePath path;
  ControllerParams controller;
  SimConfig sim;
  PredictionMethod method = PredictionMethod::triangle;
  double initial_theta = 0.0;

  bool operator==(const Scenario&) const = default;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { parse, validation, clearance };

  ScenarioError(Kind kind, std::vector<std::string> violations);

  Kind kind() const { return kind_; }
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  Kind kind_;
  std::vector<std::string> violations_;
};

/// Parses and fully validates a scenario document, including the path
/// clearance gate. Throws ScenarioError listing every violation found.
Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& file);

/// Serializes a scenario; parse_scenario(write_scenario(s)) == s.
std::string write_scenario(const Scenario& scenario);

}  // namespace headway
