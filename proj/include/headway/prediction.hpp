#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "headway/geom.hpp"
#include "headway/unicycle.hpp"

namespace headway {

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

/// Sampled closed-loop trajectory, read as a polyline of samples thickened
/// by `padding`.
struct SampledHull {
  std::vector<Vec2> points;
  double padding = 0.0;
  bool complete = true;  // false when the forward simulation ran out of horizon
};

using PredictionSet = std::variant<Disk, Triangle, SampledHull>;

enum class PredictionMethod { circle, triangle, forward_sim };

std::string_view to_string(PredictionMethod method);
std::optional<PredictionMethod> parse_prediction_method(std::string_view name);

/// Settings of the forward-simulation baseline predictor.
struct ForwardSimConfig {
  double step = 0.02;         // s
  double horizon = 60.0;      // s
  double stop_radius = 1e-3;  // m; integration ends inside this ball around the goal

  bool operator==(const ForwardSimConfig&) const = default;
};

Disk circular_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

/// conv(g, p, h) when goal-aligned, else conv(g, x_proj, x_ext).
Triangle triangular_bound(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

/// conv(g, p, h_hat) when goal-aligned, else conv(g, x_ext+, x_ext-).
Triangle triangular_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params);

/// The two branches of triangular_prediction, evaluated regardless of the
/// alignment test. Used to check their agreement on the branch boundary.
Triangle triangular_prediction_aligned_branch(const UnicycleState& state, Vec2 goal, const ControllerParams& params);
Triangle triangular_prediction_misaligned_branch(const UnicycleState& state, Vec2 goal,
                                                 const ControllerParams& params);

SampledHull forward_sim_prediction(const UnicycleState& state, Vec2 goal, const ControllerParams& params,
                                   const ForwardSimConfig& sim);

PredictionSet predict(PredictionMethod method, const UnicycleState& state, Vec2 goal,
                      const ControllerParams& params, const ForwardSimConfig& sim = {});

/// min over a in set of |a - z|; zero inside.
double prediction_distance(const PredictionSet& set, Vec2 z);

/// max over a in set of |a - goal|.
double prediction_goal_radius(const PredictionSet& set, Vec2 goal);

}  // namespace headway
