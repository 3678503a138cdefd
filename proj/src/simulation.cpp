#include "headway/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "headway/integrator.hpp"

namespace headway {

void SimConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(step)) throw std::invalid_argument("sim.step must be positive");
  if (!positive(max_time)) throw std::invalid_argument("sim.max_time must be positive");
  if (!(goal_tolerance >= 0.0) || !std::isfinite(goal_tolerance)) {
    throw std::invalid_argument("sim.goal_tolerance must be non-negative");
  }
  if (!positive(gains.safety_gain)) throw std::invalid_argument("governor safety_gain must be positive");
  if (!positive(gains.path_gain)) throw std::invalid_argument("governor path_gain must be positive");
  if (!positive(prediction.step)) throw std::invalid_argument("forward-sim step must be positive");
  if (!positive(prediction.horizon)) throw std::invalid_argument("forward-sim horizon must be positive");
  if (!positive(prediction.stop_radius)) throw std::invalid_argument("forward-sim stop_radius must be positive");
}

GovernorEvaluation governor_derivative(const GovernorState& gs, const Environment& env, const ReferencePath& path,
                                       const ControllerParams& params, PredictionMethod method,
                                       const SimConfig& config) {
  GovernorEvaluation out;
  out.local_goal = path.eval(gs.s);
  const PredictionSet set = predict(method, gs.unicycle, out.local_goal, params, config.prediction);
  out.safety = safety_distance(env, set);
  out.prediction_radius = prediction_goal_radius(set, out.local_goal);

  const double length = path.length();
  out.path_rate = std::min(config.gains.safety_gain * out.safety, -config.gains.path_gain * (gs.s - length));
  // Keep s inside [0, L].
  if (gs.s <= 0.0) out.path_rate = std::max(out.path_rate, 0.0);
  if (gs.s >= length) out.path_rate = std::min(out.path_rate, 0.0);

  out.control = adaptive_headway_control(gs.unicycle, out.local_goal, params);
  out.unicycle_rate = unicycle_derivative(gs.unicycle, out.control);
  return out;
}

std::size_t clearance_samples(const ReferencePath& path) {
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(path.length() / 0.01)) + 1);
}

double default_initial_theta(const ReferencePath& path) {
  const Vec2 d = path.waypoints()[1] - path.waypoints()[0];
  return std::atan2(d.y, d.x);
}

namespace {

GovernorState unpack(const StateVector<4>& y) { return {y[0], UnicycleState{{y[1], y[2]}, y[3]}}; }

}  // namespace

EpisodeResult run_episode(const Environment& env, const ReferencePath& path, const ControllerParams& params,
                          PredictionMethod method, const SimConfig& config, double initial_theta) {
  config.validate();
  if (const double c = path_clearance(env, path, clearance_samples(path)); !(c > 0.0)) {
    throw ClearanceError("reference path has no positive clearance (min margin " + std::to_string(c) + " m)");
  }

  using Clock = std::chrono::steady_clock;
  std::size_t evaluations = 0;
  Clock::duration spent{};

  auto field = [&](double, const StateVector<4>& y) -> StateVector<4> {
    const auto t0 = Clock::now();
    const GovernorEvaluation e = governor_derivative(unpack(y), env, path, params, method, config);
    spent += Clock::now() - t0;
    ++evaluations;
    return {e.path_rate, e.unicycle_rate.velocity.x, e.unicycle_rate.velocity.y, e.unicycle_rate.angular_rate};
  };
  const double length = path.length();
  const Vec2 end = path.end();
  auto stop = [&](double, const StateVector<4>& y) {
    return y[0] >= length - config.goal_tolerance && distance({y[1], y[2]}, end) <= config.goal_tolerance;
  };
  auto clamp_s = [&](StateVector<4>& y) { y[0] = std::clamp(y[0], 0.0, length); };

  const Vec2 start = path.start();
  const Trajectory<4> traj =
      integrate<4>(field, {0.0, start.x, start.y, wrap_angle(initial_theta)}, config.step, config.max_time, stop, clamp_s);

  EpisodeResult result;
  result.method = method;
  result.headway_coeff = params.headway_coeff;
  result.samples.reserve(traj.states.size());
  EpisodeSummary& sum = result.summary;
  sum.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const GovernorState gs = unpack(traj.states[i]);
    const GovernorEvaluation e = governor_derivative(gs, env, path, params, method, config);
    EpisodeSample sample{traj.times[i], gs, e.control, e.safety, e.prediction_radius,
                         free_space_margin(env, gs.unicycle.position)};
    sum.min_margin = std::min(sum.min_margin, sample.margin);
    sum.peak_linear_speed = std::max(sum.peak_linear_speed, std::abs(e.control.linear));
    sum.peak_angular_speed = std::max(sum.peak_angular_speed, std::abs(e.control.angular));
    if (i > 0) sum.distance_travelled += distance(gs.unicycle.position, result.samples.back().state.unicycle.position);
    result.samples.push_back(sample);
  }
  const EpisodeSample& last = result.samples.back();
  sum.travel_time = last.t;
  sum.avg_speed = sum.travel_time > 0.0 ? sum.distance_travelled / sum.travel_time : 0.0;
  sum.final_goal_error = distance(last.state.unicycle.position, end);
  sum.collision = sum.min_margin < 0.0;
  sum.converged = traj.converged;
  sum.governor_evaluations = evaluations;
  sum.seconds_per_evaluation =
      evaluations > 0 ? std::chrono::duration<double>(spent).count() / static_cast<double>(evaluations) : 0.0;
  return result;
}

std::vector<EpisodeResult> compare_methods(const Environment& env, const ReferencePath& path,
                                           const ControllerParams& params, const SimConfig& config,
                                           double initial_theta, const std::vector<PredictionMethod>& methods) {
  std::vector<EpisodeResult> out;
  out.reserve(methods.size());
  for (PredictionMethod m : methods) out.push_back(run_episode(env, path, params, m, config, initial_theta));
  return out;
}

}  // namespace headway
