#include "headway/unicycle.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "headway/integrator.hpp"

namespace headway {

double wrap_angle(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("wrap_angle: non-finite angle");
  if (angle >= -std::numbers::pi && angle < std::numbers::pi) return angle;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(angle + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  w -= std::numbers::pi;
  // fmod rounding can land exactly on +pi
  if (w >= std::numbers::pi) w -= two_pi;
  return w;
}

UnicycleState::UnicycleState(Vec2 p, double theta) : position(p), orientation(wrap_angle(theta)) {}

ControlInput::ControlInput(double v, double w) : linear(v), angular(w) {
  if (!std::isfinite(v) || !std::isfinite(w)) throw std::invalid_argument("ControlInput: non-finite component");
}

ControllerParams::ControllerParams(double epsilon, double kappa, double tolerance)
    : headway_coeff(epsilon), ref_gain(kappa), goal_tolerance(tolerance) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("headway_coeff must lie strictly inside (0, 1), got " + std::to_string(epsilon));
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("ref_gain must be positive, got " + std::to_string(kappa));
  }
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("goal_tolerance must be non-negative, got " + std::to_string(tolerance));
  }
}

double goal_alignment(const UnicycleState& state, Vec2 goal) {
  const Vec2 to_goal = goal - state.position;
  const double dist = norm(to_goal);
  if (dist == 0.0) return 1.0;
  return dot(heading(state.orientation), to_goal) / dist;
}

double headway_distance(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  return params.headway_coeff * distance(state.position, goal);
}

Vec2 headway_point(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  return state.position + headway_distance(state, goal, params) * heading(state.orientation);
}

ControlInput adaptive_headway_control(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  const Vec2 to_goal = goal - state.position;
  const double dist = norm(to_goal);
  if (dist <= params.goal_tolerance || dist == 0.0) return {0.0, 0.0};

  const double eps = params.headway_coeff;
  const double kappa = params.ref_gain;
  const Vec2 dir = to_goal / dist;
  const double along = dot(heading(state.orientation), dir);
  const double across = dot(heading_normal(state.orientation), dir);
  // 1 - eps * along >= 1 - eps > 0
  const double v = kappa * dist * (along - eps) / (1.0 - eps * along);
  const double w = (kappa / eps) * across;
  return {v, w};
}

ControlInput fixed_headway_control(const UnicycleState& state, Vec2 goal, double gain, double fixed_distance) {
  if (!(fixed_distance > 0.0)) {
    throw std::invalid_argument("fixed_headway_control: fixed_distance must be positive");
  }
  const Vec2 offset = state.position - goal;
  const double v = -gain * dot(heading(state.orientation), offset) - gain * fixed_distance;
  const double w = -(gain / fixed_distance) * dot(heading_normal(state.orientation), offset);
  return {v, w};
}

HeadwayFrame headway_frame(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  const Vec2 p = state.position;
  const Vec2 h = headway_point(state, goal, params);
  if (p == goal) return {goal, {}, {}, goal, goal};

  HeadwayFrame frame;
  frame.headway_point = h;
  const Vec2 to_goal = goal - h;
  const double hd = norm(to_goal);
  if (hd == 0.0) {
    // Unreachable for p != g since |h - g| >= (1 - eps)|p - g| > 0.
    frame.projected = goal;
    frame.extended = goal;
    return frame;
  }
  frame.tangent = to_goal / hd;
  const bool left = dot(goal - p, heading_normal(state.orientation)) >= 0.0;
  frame.normal = left ? perp(frame.tangent) : -perp(frame.tangent);
  frame.projected = goal + frame.tangent * dot(frame.tangent, p - goal);

  const double eps = params.headway_coeff;
  const double spread = eps / std::sqrt(1.0 - eps * eps);
  frame.extended = frame.projected + (spread * distance(frame.projected, goal)) * frame.normal;
  return frame;
}

StateDerivative unicycle_derivative(const UnicycleState& state, const ControlInput& input) {
  return {input.linear * heading(state.orientation), input.angular};
}

ClosedLoopTrajectory simulate_fixed_goal(const UnicycleState& start, Vec2 goal, const ControllerParams& params,
                                         double step, double max_time, double stop_radius) {
  auto field = [&](double, const StateVector<3>& y) -> StateVector<3> {
    const UnicycleState s{{y[0], y[1]}, y[2]};
    const StateDerivative d = unicycle_derivative(s, adaptive_headway_control(s, goal, params));
    return {d.velocity.x, d.velocity.y, d.angular_rate};
  };
  auto stop = [&](double, const StateVector<3>& y) {
    return stop_radius > 0.0 && distance({y[0], y[1]}, goal) <= stop_radius;
  };
  const auto traj = integrate<3>(field, {start.position.x, start.position.y, start.orientation}, step, max_time, stop);

  ClosedLoopTrajectory out;
  out.times = traj.times;
  out.states.reserve(traj.states.size());
  for (const auto& y : traj.states) out.states.emplace_back(Vec2{y[0], y[1]}, y[2]);
  out.reached_goal = traj.converged;
  return out;
}

}  // namespace headway
