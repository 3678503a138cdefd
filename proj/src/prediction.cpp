#include "headway/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "headway/detail/overloaded.hpp"

namespace headway {

std::string_view to_string(PredictionMethod method) {
  switch (method) {
    case PredictionMethod::circle:
      return "circle";
    case PredictionMethod::triangle:
      return "triangle";
    case PredictionMethod::forward_sim:
      return "forward-sim";
  }
  return "unknown";
}

std::optional<PredictionMethod> parse_prediction_method(std::string_view name) {
  if (name == "circle") return PredictionMethod::circle;
  if (name == "triangle") return PredictionMethod::triangle;
  if (name == "forward-sim") return PredictionMethod::forward_sim;
  return std::nullopt;
}

namespace {

bool is_aligned(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  return goal_alignment(state, goal) >= params.headway_coeff;
}

Triangle point_triangle(Vec2 g) { return {g, g, g}; }

}  // namespace

Disk circular_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  if (state.position == goal) return {goal, 0.0};
  if (is_aligned(state, goal, params)) return {goal, distance(state.position, goal)};
  return {goal, distance(headway_frame(state, goal, params).extended, goal)};
}

Triangle triangular_bound(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  if (state.position == goal) return point_triangle(goal);
  if (is_aligned(state, goal, params)) return {goal, state.position, headway_point(state, goal, params)};
  const HeadwayFrame f = headway_frame(state, goal, params);
  return {goal, f.projected, f.extended};
}

Triangle triangular_prediction_aligned_branch(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  if (state.position == goal) return point_triangle(goal);
  const double eps = params.headway_coeff;
  const double a = goal_alignment(state, goal);
  const double d = headway_distance(state, goal, params);
  const Vec2 h = headway_point(state, goal, params);
  const Vec2 tip = h + (((1.0 - a) / (1.0 - eps)) * d) * heading(state.orientation);
  return {goal, state.position, tip};
}

Triangle triangular_prediction_misaligned_branch(const UnicycleState& state, Vec2 goal,
                                                 const ControllerParams& params) {
  if (state.position == goal) return point_triangle(goal);
  const double eps = params.headway_coeff;
  const HeadwayFrame f = headway_frame(state, goal, params);
  const Vec2 offset = ((eps / std::sqrt(1.0 - eps * eps)) * distance(f.projected, goal)) * perp(f.tangent);
  return {goal, f.projected + offset, f.projected - offset};
}

Triangle triangular_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params) {
  if (is_aligned(state, goal, params)) return triangular_prediction_aligned_branch(state, goal, params);
  return triangular_prediction_misaligned_branch(state, goal, params);
}

SampledHull forward_sim_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params,
                                   const ForwardSimConfig& sim) {
  if (distance(state.position, goal) <= sim.stop_radius) {
    // Already inside the stopping ball: the rest of the motion stays in the
    // circular prediction of the current state.
    SampledHull hull{{state.position}, 0.0, true};
    if (state.position != goal) {
      hull.points.push_back(goal);
      hull.padding = circular_prediction(state, goal, params).radius;
    }
    return hull;
  }

  const ClosedLoopTrajectory traj =
      simulate_fixed_goal(state, goal, params, sim.step, sim.horizon, sim.stop_radius);

  SampledHull hull;
  hull.points.reserve(traj.states.size() + 1);
  double half_chord = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    hull.points.push_back(traj.states[i].position);
    if (i > 0) half_chord = std::max(half_chord, 0.5 * distance(traj.states[i].position, traj.states[i - 1].position));
  }
  hull.padding = half_chord;
  hull.complete = traj.reached_goal;
  if (traj.reached_goal) {
    hull.points.push_back(goal);
    hull.padding = std::max(hull.padding, circular_prediction(traj.states.back(), goal, params).radius);
  }
  return hull;
}

PredictionSet predict(PredictionMethod method, const UnicycleState& state, Vec2 goal,
                      const ControllerParams& params, const ForwardSimConfig& sim) {
  switch (method) {
    case PredictionMethod::circle:
      return circular_prediction(state, goal, params);
    case PredictionMethod::triangle:
      return triangular_prediction(state, goal, params);
    case PredictionMethod::forward_sim:
      return forward_sim_prediction(state, goal, params, sim);
  }
  throw std::invalid_argument("predict: unknown method");
}

namespace {

double polyline_distance(const std::vector<Vec2>& points, Vec2 z) {
  if (points.size() == 1) return distance(points.front(), z);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i) d = std::min(d, point_segment_distance(z, {points[i - 1], points[i]}));
  return d;
}

}  // namespace

double prediction_distance(const PredictionSet& set, Vec2 z) {
  return std::visit(
      detail::Overloaded{
          [&](const Disk& d) { return std::max(distance(d.center, z) - d.radius, 0.0); },
          [&](const Triangle& t) { return point_triangle_distance(t, z); },
          [&](const SampledHull& h) { return std::max(polyline_distance(h.points, z) - h.padding, 0.0); },
      },
      set);
}

double prediction_goal_radius(const PredictionSet& set, Vec2 goal) {
  return std::visit(detail::Overloaded{
                        [&](const Disk& d) { return distance(d.center, goal) + d.radius; },
                        [&](const Triangle& t) {
                          return std::max({distance(t.v0, goal), distance(t.v1, goal), distance(t.v2, goal)});
                        },
                        [&](const SampledHull& h) {
                          double r = 0.0;
                          for (Vec2 p : h.points) r = std::max(r, distance(p, goal));
                          return r + h.padding;
                        },
                    },
                    set);
}

}  // namespace headway
