#pragma once

#include <vector>

#include "headway/geom.hpp"

namespace headway {

/// Wraps an angle into [-pi, pi).
double wrap_angle(double angle);

/// Position (m) and forward orientation (rad, wrapped into [-pi, pi)).
struct UnicycleState {
  Vec2 position;
  double orientation = 0.0;

  UnicycleState() = default;
  UnicycleState(Vec2 p, double theta);

  bool operator==(const UnicycleState&) const = default;
};

/// Linear (m/s) and angular (rad/s) velocity command.
struct ControlInput {
  double linear = 0.0;
  double angular = 0.0;

  ControlInput() = default;
  ControlInput(double v, double w);

  bool operator==(const ControlInput&) const = default;
};

/// Gains of the adaptive headway controller. Construction throws
/// std::invalid_argument unless 0 < headway_coeff < 1, ref_gain > 0 and
/// goal_tolerance >= 0.
struct ControllerParams {
  double headway_coeff = 0.5;    // epsilon
  double ref_gain = 1.0;         // kappa, 1/s
  double goal_tolerance = 1e-4;  // m; control is zero inside this ball

  ControllerParams() = default;
  ControllerParams(double epsilon, double kappa, double tolerance = 1e-4);

  bool operator==(const ControllerParams&) const = default;
};

/// Geometry of the headway point motion toward a goal.
struct HeadwayFrame {
  Vec2 headway_point;
  Vec2 tangent;    // unit, or zero when the headway point is at the goal
  Vec2 normal;     // unit, or zero when the headway point is at the goal
  Vec2 projected;  // robot position projected onto the headway line of motion
  Vec2 extended;   // projected position pushed along the normal
};

struct StateDerivative {
  Vec2 velocity;
  double angular_rate = 0.0;
};

/// o(theta)^T (g - p) / |g - p|; defined as 1 at the goal.
double goal_alignment(const UnicycleState& state, Vec2 goal);

double headway_distance(const UnicycleState& state, Vec2 goal, const ControllerParams& params);
Vec2 headway_point(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

/// Adaptive headway controller. Zero inside the goal tolerance ball.
ControlInput adaptive_headway_control(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

/// Classical controller with a constant headway distance; settles with the
/// robot `fixed_distance` short of the goal.
ControlInput fixed_headway_control(const UnicycleState& state, Vec2 goal, double gain, double fixed_distance);

HeadwayFrame headway_frame(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

StateDerivative unicycle_derivative(const UnicycleState& state, const ControlInput& input);

/// Sampled closed-loop trajectory toward a fixed goal.
struct ClosedLoopTrajectory {
  std::vector<double> times;
  std::vector<UnicycleState> states;
  bool reached_goal = false;
};

/// Integrates the adaptive headway closed loop with fixed-step RK4 until
/// |p - g| <= stop_radius or max_time elapses. A non-positive stop_radius
/// integrates for exactly max_time.
ClosedLoopTrajectory simulate_fixed_goal(const UnicycleState& start, Vec2 goal, const ControllerParams& params,
                                         double step, double max_time, double stop_radius);

}  // namespace headway
