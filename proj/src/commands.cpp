#include "headway/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace headway {

namespace {

void write_file(const std::filesystem::path& file, const std::string& content) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_coeff(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

// Worst outcome first: a collision outranks a missed deadline.
ExitCode combine(ExitCode a, ExitCode b) {
  auto rank = [](ExitCode c) {
    switch (c) {
      case ExitCode::collision: return 2;
      case ExitCode::non_convergence: return 1;
      default: return 0;
    }
  };
  return rank(b) > rank(a) ? b : a;
}

TrajectoryLayer layer_from(const EpisodeResult& result, std::string label) {
  return {std::move(label), trajectory_rows(result), result.method, result.headway_coeff};
}

RenderSpec episode_render_spec(double travel_time) {
  RenderSpec spec;
  spec.snapshot_times = {0.0, 0.25 * travel_time, 0.5 * travel_time, 0.75 * travel_time};
  return spec;
}

void log_summary(std::ostream& log, const EpisodeResult& r) {
  char line[200];
  std::snprintf(line, sizeof line, "%s eps=%g: travel_time=%.3f s, min_margin=%.4f m, converged=%s, collision=%s\n",
                std::string(to_string(r.method)).c_str(), r.headway_coeff, r.summary.travel_time,
                r.summary.min_margin, r.summary.converged ? "yes" : "no", r.summary.collision ? "yes" : "no");
  log << line;
}

}  // namespace

Scenario apply_overrides(Scenario scenario, const RunOverrides& overrides) {
  std::vector<std::string> invalid;
  if (overrides.method) scenario.method = *overrides.method;
  if (overrides.headway_coeff) {
    try {
      scenario.controller =
          ControllerParams(*overrides.headway_coeff, scenario.controller.ref_gain, scenario.controller.goal_tolerance);
    } catch (const std::invalid_argument& e) {
      invalid.push_back(std::string("--epsilon: ") + e.what());
    }
  }
  if (overrides.step) scenario.sim.step = *overrides.step;
  if (overrides.max_time) scenario.sim.max_time = *overrides.max_time;
  try {
    scenario.sim.validate();
  } catch (const std::invalid_argument& e) {
    invalid.push_back(std::string("--dt/--max-time: ") + e.what());
  }
  if (!invalid.empty()) throw ScenarioError(ScenarioError::Kind::validation, invalid);
  return scenario;
}

std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& cli_value,
                                         const std::filesystem::path& fallback) {
  if (cli_value) return *cli_value;
  if (const char* env = std::getenv("HEADWAY_SIM_OUT"); env != nullptr && *env != '\0') return env;
  return fallback;
}

ExitCode episode_exit_code(const EpisodeSummary& summary) {
  if (summary.collision) return ExitCode::collision;
  if (!summary.converged) return ExitCode::non_convergence;
  return ExitCode::success;
}

ExitCode scenario_exit_code(const ScenarioError& error) {
  return error.kind() == ScenarioError::Kind::clearance ? ExitCode::clearance : ExitCode::schema;
}

std::string episode_stem(std::string_view scenario_name, PredictionMethod method, double headway_coeff) {
  return std::string(scenario_name) + "_" + std::string(to_string(method)) + "_eps" + format_coeff(headway_coeff);
}

namespace {

RunArtifacts write_episode(const Scenario& scenario, EpisodeResult result, const std::filesystem::path& out_dir) {
  RunArtifacts a;
  const std::string stem = episode_stem(scenario.name, result.method, result.headway_coeff);
  a.csv = out_dir / (stem + ".csv");
  a.summary = out_dir / (stem + ".summary.json");
  a.svg = out_dir / (stem + ".svg");
  const auto rows = trajectory_rows(result);
  write_file(a.csv, write_trajectory_csv(rows));
  write_file(a.summary, write_summary(result, scenario.name));
  const TrajectoryLayer layer = layer_from(result, stem);
  write_file(a.svg, render_scene(episode_render_spec(result.summary.travel_time), {&layer, 1}, &scenario));
  a.exit_code = episode_exit_code(result.summary);
  a.result = std::move(result);
  return a;
}

}  // namespace

RunArtifacts cmd_run(const Scenario& scenario, const std::filesystem::path& out_dir, std::ostream& log) {
  EpisodeResult result = run_episode(scenario.environment, scenario.path, scenario.controller, scenario.method,
                                     scenario.sim, scenario.initial_theta);
  log_summary(log, result);
  RunArtifacts a = write_episode(scenario, std::move(result), out_dir);
  log << "wrote " << a.csv.string() << ", " << a.summary.string() << ", " << a.svg.string() << "\n";
  return a;
}

CompareArtifacts cmd_compare(const Scenario& scenario, const std::vector<PredictionMethod>& methods,
                             const std::vector<double>& headway_coeffs, const std::filesystem::path& out_dir,
                             std::ostream& log) {
  if (methods.empty() || headway_coeffs.empty()) {
    throw std::invalid_argument("compare needs at least one method and one headway coefficient");
  }
  CompareArtifacts out;
  std::vector<EpisodeResult> results;
  std::vector<TrajectoryLayer> layers;
  for (double eps : headway_coeffs) {
    RunOverrides sweep;
    sweep.headway_coeff = eps;
    const Scenario variant = apply_overrides(scenario, sweep);
    for (EpisodeResult& r : compare_methods(variant.environment, variant.path, variant.controller, variant.sim,
                                            variant.initial_theta, methods)) {
      log_summary(log, r);
      results.push_back(r);
      layers.push_back(layer_from(r, std::string(to_string(r.method)) + " eps=" + format_coeff(eps)));
      RunArtifacts a = write_episode(variant, std::move(r), out_dir);
      out.exit_code = combine(out.exit_code, a.exit_code);
      out.runs.push_back(std::move(a));
    }
  }

  out.table = out_dir / (scenario.name + "_comparison.txt");
  out.speed_profile = out_dir / (scenario.name + "_speed_profile.svg");
  out.overlay = out_dir / (scenario.name + "_overlay.svg");
  const std::string table = comparison_table(results);
  write_file(out.table, table);
  RenderSpec spec;
  spec.show_speed_bars = false;
  write_file(out.speed_profile, render_speed_profile(spec, layers));
  write_file(out.overlay, render_scene(spec, layers, &scenario));
  log << table;
  log << "wrote " << out.table.string() << ", " << out.speed_profile.string() << ", " << out.overlay.string() << "\n";
  return out;
}

TrajectoryLayer load_layer(const std::filesystem::path& csv_file) {
  TrajectoryLayer layer;
  layer.label = csv_file.stem().string();
  try {
    layer.rows = parse_trajectory_csv(read_file(csv_file));
  } catch (const CsvError& e) {
    throw CsvError(e.row(), e.column(), csv_file.string() + ": " + e.what());
  }
  const std::string& stem = layer.label;
  const std::size_t eps_at = stem.rfind("_eps");
  if (eps_at != std::string::npos) {
    const std::size_t method_at = stem.rfind('_', eps_at - 1);
    if (method_at != std::string::npos) {
      layer.method = parse_prediction_method(std::string_view(stem).substr(method_at + 1, eps_at - method_at - 1));
      char* end = nullptr;
      const std::string coeff = stem.substr(eps_at + 4);
      const double value = std::strtod(coeff.c_str(), &end);
      if (end != nullptr && *end == '\0' && value > 0.0 && value < 1.0) layer.headway_coeff = value;
    }
  }
  return layer;
}

void cmd_render(const std::vector<std::filesystem::path>& csv_files, const RenderSpec& spec,
                const Scenario* scenario, const std::filesystem::path& svg_file) {
  std::vector<TrajectoryLayer> layers;
  for (const auto& f : csv_files) layers.push_back(load_layer(f));
  write_file(svg_file, render_scene(spec, layers, scenario));
}

ExitCode cmd_check(const PropertyOptions& options, std::ostream& log) {
  bool all = true;
  char line[256];
  for (const PropertyResult& r : run_property_suite(options)) {
    all = all && r.passed;
    std::snprintf(line, sizeof line, "%s %-28s worst=%-12.4g tol=%-10.3g n=%-6zu %s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.worst, r.tolerance, r.samples, r.detail.c_str());
    log << line;
  }
  return all ? ExitCode::success : ExitCode::property_failure;
}

ExitCode cmd_validate(const std::filesystem::path& file, std::ostream& log) {
  try {
    const Scenario s = load_scenario(file);
    log << file.string() << ": ok (" << s.name << ", path length " << s.path.length() << " m, "
        << s.environment.obstacles().size() << " obstacles)\n";
    return ExitCode::success;
  } catch (const ScenarioError& e) {
    for (const std::string& v : e.violations()) log << v << "\n";
    return scenario_exit_code(e);
  }
}

}  // namespace headway
