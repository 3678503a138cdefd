#include "headway/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "headway/detail/overloaded.hpp"

namespace headway {

Environment::Environment(Polygon workspace, std::vector<Polygon> obstacles, double robot_radius)
    : workspace_(std::move(workspace)), obstacles_(std::move(obstacles)), robot_radius_(robot_radius) {
  if (!(robot_radius_ > 0.0) || !std::isfinite(robot_radius_)) {
    throw std::invalid_argument("robot_radius must be positive");
  }
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_y = min_x, max_y = -min_x;
  for (Vec2 v : workspace_.vertices()) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    for (Vec2 v : obstacles_[i].vertices()) {
      if (v.x < min_x || v.x > max_x || v.y < min_y || v.y > max_y) {
        throw std::invalid_argument("obstacle " + std::to_string(i) + " leaves the workspace bounding box");
      }
    }
  }
}

ReferencePath::ReferencePath(std::vector<Vec2> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) throw std::invalid_argument("reference path needs at least 2 waypoints");
  cumulative_.reserve(waypoints_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    const double len = distance(waypoints_[i - 1], waypoints_[i]);
    if (!(len > 0.0)) {
      throw std::invalid_argument("reference path waypoints " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " coincide");
    }
    cumulative_.push_back(cumulative_.back() + len);
  }
}

Vec2 ReferencePath::eval(double s) const {
  if (std::isnan(s)) throw std::invalid_argument("ReferencePath::eval: NaN arc length");
  if (s <= 0.0) return waypoints_.front();
  if (s >= length()) return waypoints_.back();
  // First knot strictly beyond s.
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  const double s0 = cumulative_[i - 1];
  const double t = (s - s0) / (cumulative_[i] - s0);
  return waypoints_[i - 1] + (waypoints_[i] - waypoints_[i - 1]) * t;
}

double free_space_margin(const Environment& env, Vec2 p) {
  double clearance = -polygon_point_distance(env.workspace(), p);
  for (const Polygon& o : env.obstacles()) clearance = std::min(clearance, polygon_point_distance(o, p));
  return clearance - env.robot_radius();
}

namespace {

// Distance from a triangle lying in the free space to the nearest workspace
// or obstacle boundary; 0 when any boundary edge touches the triangle.
double triangle_boundary_distance(const Environment& env, const Triangle& t) {
  double d = std::numeric_limits<double>::infinity();
  const auto corners = t.vertices();
  const Box tri_box = bounding_box(corners);
  auto scan = [&](const Polygon& poly) {
    if (box_distance(tri_box, poly.bounds()) >= d) return;
    for (std::size_t i = 0; i < poly.size() && d > 0.0; ++i) d = std::min(d, segment_triangle_distance(poly.edge(i), t));
  };
  scan(env.workspace());
  for (const Polygon& o : env.obstacles()) scan(o);
  return d;
}

}  // namespace

double safety_distance(const Environment& env, const PredictionSet& set) {
  return std::visit(
      detail::Overloaded{
          [&](const Disk& disk) { return std::max(free_space_margin(env, disk.center) - disk.radius, 0.0); },
          [&](const Triangle& t) {
            for (Vec2 v : t.vertices()) {
              if (free_space_margin(env, v) < 0.0) return 0.0;
            }
            return std::max(triangle_boundary_distance(env, t) - env.robot_radius(), 0.0);
          },
          [&](const SampledHull& hull) {
            if (!hull.complete) return 0.0;
            double m = std::numeric_limits<double>::infinity();
            for (Vec2 p : hull.points) m = std::min(m, free_space_margin(env, p));
            return std::max(m - hull.padding, 0.0);
          },
      },
      set);
}

double path_clearance(const Environment& env, const ReferencePath& path, std::size_t n_samples) {
  if (n_samples < 2) throw std::invalid_argument("path_clearance: need at least 2 samples");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double s = path.length() * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    m = std::min(m, free_space_margin(env, path.eval(s)));
  }
  return m;
}

}  // namespace headway
