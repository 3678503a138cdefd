#include "headway/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace headway {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Collects schema violations while reading fields out of the document.
class Reader {
 public:
  std::vector<std::string> violations;

  void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
    if (!obj.is_object()) return;
    for (const auto& [key, _] : obj.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        violations.push_back(std::string(where) + ": unknown field '" + key + "'");
      }
    }
  }

  std::optional<double> number(const json& obj, const std::string& key, std::string_view where,
                               std::optional<double> fallback) {
    if (!obj.is_object() || !obj.contains(key)) {
      if (!fallback) violations.push_back(std::string(where) + "." + key + ": missing");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      violations.push_back(std::string(where) + "." + key + ": expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<Vec2> point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      violations.push_back(where + ": expected [x, y]");
      return std::nullopt;
    }
    try {
      return Vec2{v[0].get<double>(), v[1].get<double>()};
    } catch (const std::invalid_argument& e) {
      violations.push_back(where + ": " + e.what());
      return std::nullopt;
    }
  }

  std::optional<std::vector<Vec2>> points(const json& v, const std::string& where) {
    if (!v.is_array()) {
      violations.push_back(where + ": expected a list of [x, y] points");
      return std::nullopt;
    }
    std::vector<Vec2> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto p = point(v[i], where + "[" + std::to_string(i) + "]");
      if (p) out.push_back(*p);
      else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }
};

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  return doc.contains(key) ? doc.at(key) : empty;
}

}  // namespace

ScenarioError::ScenarioError(Kind kind, std::vector<std::string> violations)
    : std::runtime_error(join(violations)), kind_(kind), violations_(std::move(violations)) {}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ScenarioError::Kind::parse, {std::string(source) + ":" +
                                                     std::to_string(line_of(text, e.byte)) + ": " + e.what()});
  }
  if (!doc.is_object()) throw ScenarioError(ScenarioError::Kind::parse, {std::string(source) + ": expected an object"});

  Reader r;
  r.reject_unknown(doc, "scenario",
                   {"name", "workspace", "obstacles", "robot_radius", "path", "controller", "governor", "integrator",
                    "forward_sim", "prediction", "initial_theta"});

  std::string name = doc.value("name", std::string{});

  std::optional<std::vector<Vec2>> workspace;
  if (doc.contains("workspace")) workspace = r.points(doc["workspace"], "workspace");
  else r.violations.push_back("workspace: missing");

  std::vector<std::vector<Vec2>> obstacle_rings;
  if (doc.contains("obstacles")) {
    const json& obs = doc["obstacles"];
    if (!obs.is_array()) {
      r.violations.push_back("obstacles: expected a list of polygons");
    } else {
      for (std::size_t i = 0; i < obs.size(); ++i) {
        if (auto p = r.points(obs[i], "obstacles[" + std::to_string(i) + "]")) obstacle_rings.push_back(std::move(*p));
      }
    }
  }
  const auto radius = r.number(doc, "robot_radius", "scenario", std::nullopt);

  std::optional<std::vector<Vec2>> waypoints;
  if (doc.contains("path")) waypoints = r.points(doc["path"], "path");
  else r.violations.push_back("path: missing");

  const ControllerParams ctrl_defaults;
  const json& ctrl = section(doc, "controller");
  r.reject_unknown(ctrl, "controller", {"headway_coeff", "ref_gain", "goal_tolerance"});
  const auto eps = r.number(ctrl, "headway_coeff", "controller", ctrl_defaults.headway_coeff);
  const auto kappa = r.number(ctrl, "ref_gain", "controller", ctrl_defaults.ref_gain);
  const auto ctrl_tol = r.number(ctrl, "goal_tolerance", "controller", ctrl_defaults.goal_tolerance);

  SimConfig sim;
  const json& gov = section(doc, "governor");
  r.reject_unknown(gov, "governor", {"safety_gain", "path_gain"});
  const auto ks = r.number(gov, "safety_gain", "governor", sim.gains.safety_gain);
  const auto kz = r.number(gov, "path_gain", "governor", sim.gains.path_gain);
  const json& integ = section(doc, "integrator");
  r.reject_unknown(integ, "integrator", {"step", "max_time", "goal_tolerance"});
  const auto step = r.number(integ, "step", "integrator", sim.step);
  const auto max_time = r.number(integ, "max_time", "integrator", sim.max_time);
  const auto sim_tol = r.number(integ, "goal_tolerance", "integrator", sim.goal_tolerance);
  const json& fwd = section(doc, "forward_sim");
  r.reject_unknown(fwd, "forward_sim", {"step", "horizon", "stop_radius"});
  const auto fs_step = r.number(fwd, "step", "forward_sim", sim.prediction.step);
  const auto fs_horizon = r.number(fwd, "horizon", "forward_sim", sim.prediction.horizon);
  const auto fs_stop = r.number(fwd, "stop_radius", "forward_sim", sim.prediction.stop_radius);

  PredictionMethod method = PredictionMethod::triangle;
  if (doc.contains("prediction")) {
    const json& m = doc["prediction"];
    const auto parsed = m.is_string() ? parse_prediction_method(m.get<std::string>()) : std::nullopt;
    if (parsed) method = *parsed;
    else r.violations.push_back("prediction: expected one of \"circle\", \"triangle\", \"forward-sim\"");
  }
  const auto theta = doc.contains("initial_theta") ? r.number(doc, "initial_theta", "scenario", std::nullopt)
                                                   : std::optional<double>{};

  if (!r.violations.empty()) throw ScenarioError(ScenarioError::Kind::parse, r.violations);

  // Every field is present and well-typed; now check the domain invariants.
  std::vector<std::string> invalid;
  auto attempt = [&](const char* what, auto&& build) {
    try {
      build();
    } catch (const std::invalid_argument& e) {
      invalid.push_back(std::string(what) + ": " + e.what());
    }
  };
  std::optional<Environment> env;
  std::optional<ReferencePath> path;
  std::optional<ControllerParams> controller;
  std::optional<Polygon> workspace_polygon;
  std::vector<Polygon> obstacles;
  bool polygons_ok = true;
  attempt("workspace", [&] { workspace_polygon.emplace(*workspace); });
  polygons_ok = workspace_polygon.has_value();
  for (std::size_t i = 0; i < obstacle_rings.size(); ++i) {
    const std::string where = "obstacles[" + std::to_string(i) + "]";
    attempt(where.c_str(), [&] { obstacles.emplace_back(obstacle_rings[i]); });
    polygons_ok = polygons_ok && obstacles.size() == i + 1;
  }
  if (polygons_ok) attempt("environment", [&] { env.emplace(*workspace_polygon, obstacles, *radius); });
  attempt("path", [&] { path.emplace(*waypoints); });
  attempt("controller", [&] { controller.emplace(*eps, *kappa, *ctrl_tol); });
  sim.step = *step;
  sim.max_time = *max_time;
  sim.goal_tolerance = *sim_tol;
  sim.gains = {*ks, *kz};
  sim.prediction = {*fs_step, *fs_horizon, *fs_stop};
  attempt("sim", [&] { sim.validate(); });
  if (theta && !std::isfinite(*theta)) invalid.push_back("initial_theta: must be finite");
  if (!invalid.empty()) throw ScenarioError(ScenarioError::Kind::validation, invalid);

  const double clearance = path_clearance(*env, *path, clearance_samples(*path));
  if (!(clearance > 0.0)) {
    throw ScenarioError(ScenarioError::Kind::clearance,
                        {"path: minimum free-space clearance " + std::to_string(clearance) + " m is not positive"});
  }

  const double initial_theta = wrap_angle(theta ? *theta : default_initial_theta(*path));
  return Scenario{std::move(name),
                  std::move(*env),
                  std::move(*path),
                  *controller,
                  sim,
                  method,
                  initial_theta};
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ScenarioError(ScenarioError::Kind::parse, {file.string() + ": cannot open"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), file.string());
}

namespace {

json to_json(Vec2 v) { return json::array({v.x, v.y}); }

json to_json(std::span<const Vec2> pts) {
  json out = json::array();
  for (Vec2 v : pts) out.push_back(to_json(v));
  return out;
}

}  // namespace

std::string write_scenario(const Scenario& s) {
  json doc = json::object();
  doc["name"] = s.name;
  doc["workspace"] = to_json(s.environment.workspace().vertices());
  json obs = json::array();
  for (const Polygon& o : s.environment.obstacles()) obs.push_back(to_json(o.vertices()));
  doc["obstacles"] = obs;
  doc["robot_radius"] = s.environment.robot_radius();
  doc["path"] = to_json(s.path.waypoints());
  doc["controller"] = {{"headway_coeff", s.controller.headway_coeff},
                       {"ref_gain", s.controller.ref_gain},
                       {"goal_tolerance", s.controller.goal_tolerance}};
  doc["governor"] = {{"safety_gain", s.sim.gains.safety_gain}, {"path_gain", s.sim.gains.path_gain}};
  doc["integrator"] = {
      {"step", s.sim.step}, {"max_time", s.sim.max_time}, {"goal_tolerance", s.sim.goal_tolerance}};
  doc["forward_sim"] = {{"step", s.sim.prediction.step},
                        {"horizon", s.sim.prediction.horizon},
                        {"stop_radius", s.sim.prediction.stop_radius}};
  doc["prediction"] = std::string(to_string(s.method));
  doc["initial_theta"] = s.initial_theta;
  return doc.dump(2) + "\n";
}

}  // namespace headway
