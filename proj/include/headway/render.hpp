#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "headway/report.hpp"
#include "headway/scenario.hpp"

namespace headway {

/// Canvas and layer settings for SVG output.
struct RenderSpec {
  int width = 900;   // px
  int height = 600;  // px
  double path_stroke = 1.5;        // px
  double trajectory_stroke = 2.0;  // px
  double snapshot_stroke = 1.0;    // px
  bool show_path = true;
  bool show_trajectory = true;
  bool show_snapshots = true;
  bool show_speed_bars = true;
  double speed_bar_interval = 0.5;  // s between speed bars
  double speed_bar_scale = 0.4;     // m of bar length per m/s
  std::vector<double> snapshot_times = {0.0};

  /// Throws std::invalid_argument on non-positive sizes or negative times.
  void validate() const;
};

/// One trajectory drawn on the canvas. Snapshots need the method and the
/// headway coefficient that produced the trajectory.
struct TrajectoryLayer {
  std::string label;
  std::vector<TrajectoryRow> rows;
  std::optional<PredictionMethod> method;
  std::optional<double> headway_coeff;
};

/// Workspace, obstacles, path, trajectories and prediction-set snapshots.
/// Without a scenario only the trajectory layers are drawn. Throws
/// std::invalid_argument when there is no layer or a layer has no rows.
std::string render_scene(const RenderSpec& spec, std::span<const TrajectoryLayer> layers,
                         const Scenario* scenario);

/// Linear speed against time, one polyline per layer.
std::string render_speed_profile(const RenderSpec& spec, std::span<const TrajectoryLayer> layers);

}  // namespace headway
