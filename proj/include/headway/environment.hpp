#pragma once

#include <span>
#include <vector>

#include "headway/geom.hpp"
#include "headway/prediction.hpp"

namespace headway {

/// Polygonal workspace with polygonal obstacles and a disk robot. The free
/// space is the set of positions where the robot disk fits inside the
/// workspace without touching any obstacle.
class Environment {
 public:
  Environment(Polygon workspace, std::vector<Polygon> obstacles, double robot_radius);

  const Polygon& workspace() const { return workspace_; }
  std::span<const Polygon> obstacles() const { return obstacles_; }
  double robot_radius() const { return robot_radius_; }

  bool operator==(const Environment&) const = default;

 private:
  Polygon workspace_;
  std::vector<Polygon> obstacles_;
  double robot_radius_;
};

/// Piecewise-linear path parametrized by arc length over [0, length()].
class ReferencePath {
 public:
  explicit ReferencePath(std::vector<Vec2> waypoints);

  std::span<const Vec2> waypoints() const { return waypoints_; }
  std::span<const double> cumulative_lengths() const { return cumulative_; }
  double length() const { return cumulative_.back(); }
  Vec2 start() const { return waypoints_.front(); }
  Vec2 end() const { return waypoints_.back(); }

  /// Point at arc length s; s is clamped to [0, length()].
  Vec2 eval(double s) const;

  bool operator==(const ReferencePath& o) const { return waypoints_ == o.waypoints_; }

 private:
  std::vector<Vec2> waypoints_;
  std::vector<double> cumulative_;
};

inline Vec2 path_eval(const ReferencePath& path, double s) { return path.eval(s); }

/// Signed clearance of the robot disk at p: positive iff the disk lies in the
/// workspace and off every obstacle.
double free_space_margin(const Environment& env, Vec2 p);

/// Distance from a prediction set to the free-space boundary, or 0 when the
/// set leaves the free space.
double safety_distance(const Environment& env, const PredictionSet& set);

/// Minimum free_space_margin over n_samples evenly spaced arc-length samples.
double path_clearance(const Environment& env, const ReferencePath& path, std::size_t n_samples);

}  // namespace headway
