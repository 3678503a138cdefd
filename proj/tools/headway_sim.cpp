#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "headway/commands.hpp"

namespace {

using headway::ExitCode;

int code(ExitCode c) { return static_cast<int>(c); }

std::vector<headway::PredictionMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<headway::PredictionMethod> out;
  for (const std::string& n : names) {
    const auto m = headway::parse_prediction_method(n);
    if (!m) throw std::invalid_argument("unknown method '" + n + "' (circle, triangle, forward-sim)");
    out.push_back(*m);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-headway unicycle path following with feedback motion prediction"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::vector<std::string> methods;
  std::vector<double> epsilons;
  std::uint64_t seed = 1;
  std::optional<std::string> out_dir;
  std::optional<double> dt;
  std::optional<double> max_time;

  auto add_run_flags = [&](CLI::App* sub, bool many) {
    sub->add_option("--scenario", scenario_file, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    if (many) {
      sub->add_option("--method", methods, "Prediction methods (circle, triangle, forward-sim)")->delimiter(',');
      sub->add_option("--epsilon", epsilons, "Headway coefficients to sweep")->delimiter(',');
    } else {
      sub->add_option("--method", methods, "Prediction method (circle, triangle, forward-sim)")->expected(1);
      sub->add_option("--epsilon", epsilons, "Headway coefficient")->expected(1);
    }
    sub->add_option("--out", out_dir, "Output directory (default: $HEADWAY_SIM_OUT or ./out)");
    sub->add_option("--dt", dt, "Integration step [s]");
    sub->add_option("--max-time", max_time, "Episode time limit [s]");
    sub->add_option("--seed", seed, "Random seed (episodes are deterministic; accepted for uniformity)");
  };

  CLI::App* run = app.add_subcommand("run", "Run one episode and write CSV, summary and SVG");
  add_run_flags(run, false);
  CLI::App* compare = app.add_subcommand("compare", "Compare prediction methods and headway coefficients");
  add_run_flags(compare, true);

  CLI::App* render = app.add_subcommand("render", "Render trajectory CSVs to SVG");
  std::vector<std::string> csv_files;
  std::string svg_file;
  std::optional<std::string> render_scenario;
  headway::RenderSpec spec;
  bool no_path = false, no_trajectory = false, no_snapshots = false, no_speed_bars = false;
  render->add_option("csv", csv_files, "Trajectory CSV files")->required()->check(CLI::ExistingFile);
  render->add_option("-o,--output", svg_file, "SVG file to write")->required();
  render->add_option("--scenario", render_scenario, "Scenario for environment and prediction snapshots");
  render->add_option("--width", spec.width, "Canvas width [px]");
  render->add_option("--height", spec.height, "Canvas height [px]");
  render->add_option("--stroke", spec.trajectory_stroke, "Trajectory stroke width [px]");
  render->add_option("--snapshot", spec.snapshot_times, "Snapshot times [s]")->delimiter(',');
  render->add_flag("--no-path", no_path, "Hide the reference path");
  render->add_flag("--no-trajectory", no_trajectory, "Hide trajectories");
  render->add_flag("--no-snapshots", no_snapshots, "Hide prediction snapshots");
  render->add_flag("--no-speed-bars", no_speed_bars, "Hide speed bars");

  CLI::App* check = app.add_subcommand("check", "Run the randomized property suites");
  headway::PropertyOptions check_opts;
  check->add_option("--seed", check_opts.seed, "Random seed");
  check->add_option("--samples", check_opts.static_samples, "Random states per static property");
  check->add_option("--trajectories", check_opts.trajectories, "Integrated runs per trajectory property");
  check->add_option("--dt", check_opts.step, "Integration step [s]");

  CLI::App* validate = app.add_subcommand("validate", "Validate a scenario file");
  std::string validate_file;
  validate->add_option("scenario", validate_file, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : code(ExitCode::schema);
  }

  try {
    if (*validate) return code(headway::cmd_validate(validate_file, std::cout));
    if (*check) return code(headway::cmd_check(check_opts, std::cout));

    if (*render) {
      spec.show_path = !no_path;
      spec.show_trajectory = !no_trajectory;
      spec.show_snapshots = !no_snapshots;
      spec.show_speed_bars = !no_speed_bars;
      std::optional<headway::Scenario> scenario;
      if (render_scenario) scenario = headway::load_scenario(*render_scenario);
      std::vector<std::filesystem::path> files(csv_files.begin(), csv_files.end());
      headway::cmd_render(files, spec, scenario ? &*scenario : nullptr, svg_file);
      std::cout << "wrote " << svg_file << "\n";
      return 0;
    }

    const headway::Scenario loaded = headway::load_scenario(scenario_file);
    const auto parsed_methods = parse_methods(methods);
    const auto out = headway::resolve_output_dir(out_dir ? std::optional<std::filesystem::path>(*out_dir)
                                                         : std::nullopt);
    if (*run) {
      headway::RunOverrides o;
      if (!parsed_methods.empty()) o.method = parsed_methods.front();
      if (!epsilons.empty()) o.headway_coeff = epsilons.front();
      o.step = dt;
      o.max_time = max_time;
      return code(headway::cmd_run(headway::apply_overrides(loaded, o), out, std::cout).exit_code);
    }
    headway::RunOverrides o;
    o.step = dt;
    o.max_time = max_time;
    const headway::Scenario base = headway::apply_overrides(loaded, o);
    const auto sweep_methods = parsed_methods.empty()
                                   ? std::vector<headway::PredictionMethod>{headway::PredictionMethod::circle,
                                                                            headway::PredictionMethod::triangle,
                                                                            headway::PredictionMethod::forward_sim}
                                   : parsed_methods;
    const auto sweep_eps = epsilons.empty() ? std::vector<double>{base.controller.headway_coeff} : epsilons;
    return code(headway::cmd_compare(base, sweep_methods, sweep_eps, out, std::cout).exit_code);
  } catch (const headway::ScenarioError& e) {
    for (const std::string& v : e.violations()) std::cerr << "error: " << v << "\n";
    return code(headway::scenario_exit_code(e));
  } catch (const headway::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(ExitCode::schema);
  } catch (const headway::ClearanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(ExitCode::clearance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(ExitCode::schema);
  }
}
