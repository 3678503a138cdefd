#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "headway/properties.hpp"
#include "headway/render.hpp"
#include "headway/scenario.hpp"

namespace headway {

/// Process exit codes of the headway_sim tool.
enum class ExitCode : int {
  success = 0,
  schema = 1,           // scenario or input file rejected
  clearance = 2,        // reference path has no positive clearance
  non_convergence = 3,  // path end not reached within max_time
  collision = 4,        // robot left the free space
  property_failure = 5, // a property check of `check` failed
};

/// Command-line overrides applied on top of a loaded scenario.
struct RunOverrides {
  std::optional<PredictionMethod> method;
  std::optional<double> headway_coeff;
  std::optional<double> step;
  std::optional<double> max_time;
};

/// Throws ScenarioError (validation) when an override breaks an invariant.
Scenario apply_overrides(Scenario scenario, const RunOverrides& overrides);

/// --out wins, then HEADWAY_SIM_OUT, then `fallback`.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& cli_value,
                                         const std::filesystem::path& fallback = "out");

ExitCode episode_exit_code(const EpisodeSummary& summary);

/// Base name of the files written for one episode, e.g. "office_triangle_eps0.5".
std::string episode_stem(std::string_view scenario_name, PredictionMethod method, double headway_coeff);

struct RunArtifacts {
  EpisodeResult result;
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path svg;
  ExitCode exit_code = ExitCode::success;
};

/// Runs the scenario once and writes its CSV, summary and SVG.
RunArtifacts cmd_run(const Scenario& scenario, const std::filesystem::path& out_dir, std::ostream& log);

struct CompareArtifacts {
  std::vector<RunArtifacts> runs;
  std::filesystem::path table;
  std::filesystem::path speed_profile;
  std::filesystem::path overlay;
  ExitCode exit_code = ExitCode::success;
};

/// One run per (headway coefficient, method) pair, plus a comparison table,
/// a speed-profile overlay and a trajectory overlay.
CompareArtifacts cmd_compare(const Scenario& scenario, const std::vector<PredictionMethod>& methods,
                             const std::vector<double>& headway_coeffs, const std::filesystem::path& out_dir,
                             std::ostream& log);

/// Renders trajectory CSVs into one SVG. The scenario, when given, adds the
/// environment and the prediction snapshots. Throws CsvError on malformed
/// input.
void cmd_render(const std::vector<std::filesystem::path>& csv_files, const RenderSpec& spec,
                const Scenario* scenario, const std::filesystem::path& svg_file);

/// Layer for a CSV file, with method and coefficient read from a file name
/// produced by episode_stem when possible.
TrajectoryLayer load_layer(const std::filesystem::path& csv_file);

/// Runs the property suite and prints one line per property.
ExitCode cmd_check(const PropertyOptions& options, std::ostream& log);

/// Loads and validates a scenario, printing every violation found.
ExitCode cmd_validate(const std::filesystem::path& file, std::ostream& log);

/// Maps a scenario loading failure to its exit code.
ExitCode scenario_exit_code(const ScenarioError& error);

}  // namespace headway
