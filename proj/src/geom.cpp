#include "headway/geom.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace headway {

Vec2::Vec2(double x_, double y_) : x(x_), y(y_) {
  if (!std::isfinite(x_) || !std::isfinite(y_)) {
    throw std::invalid_argument("Vec2: non-finite component");
  }
}

Vec2 rotate(Vec2 v, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("rotate: non-finite angle");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double signed_area(std::span<const Vec2> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  }
  return 0.5 * twice;
}

Box bounding_box(std::span<const Vec2> points) {
  Box b{points.front(), points.front()};
  for (Vec2 p : points.subspan(1)) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y)};
  }
  return b;
}

double box_distance(const Box& a, const Box& b) {
  const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
  const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
  return std::hypot(dx, dy);
}

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) {
    throw std::invalid_argument("Polygon: needs at least 3 vertices, got " + std::to_string(n));
  }
  if (signed_area(vertices_) <= 0.0) {
    throw std::invalid_argument("Polygon: vertices must be in counterclockwise order");
  }
  // Non-adjacent edges must not touch.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(edge(i), edge(j))) {
        throw std::invalid_argument("Polygon: edges " + std::to_string(i) + " and " + std::to_string(j) +
                                    " intersect (polygon must be simple)");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices_[i] == vertices_[(i + 1) % n]) {
      throw std::invalid_argument("Polygon: repeated vertex " + std::to_string(i));
    }
  }
  bounds_ = bounding_box(vertices_);
}

double Polygon::area() const { return signed_area(vertices_); }

Vec2 closest_point_on_segment(Vec2 z, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const double len2 = squared_norm(ab);
  if (len2 == 0.0) return s.a;
  const double t = std::clamp(dot(z - s.a, ab) / len2, 0.0, 1.0);
  return s.a + ab * t;
}

double point_segment_distance(Vec2 z, const Segment& s) { return distance(z, closest_point_on_segment(z, s)); }

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// c known collinear with [a, b]; is it within the bounding box of the segment?
bool on_collinear_segment(Vec2 a, Vec2 b, Vec2 c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

double triangle_scale(const Triangle& t) {
  double m = 0.0;
  for (Vec2 v : t.vertices()) m = std::max({m, std::abs(v.x), std::abs(v.y)});
  return std::max(m, 1.0);
}

}  // namespace

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const int o1 = sign(orientation(s1.a, s1.b, s2.a));
  const int o2 = sign(orientation(s1.a, s1.b, s2.b));
  const int o3 = sign(orientation(s2.a, s2.b, s1.a));
  const int o4 = sign(orientation(s2.a, s2.b, s1.b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_collinear_segment(s1.a, s1.b, s2.a)) return true;
  if (o2 == 0 && on_collinear_segment(s1.a, s1.b, s2.b)) return true;
  if (o3 == 0 && on_collinear_segment(s2.a, s2.b, s1.a)) return true;
  if (o4 == 0 && on_collinear_segment(s2.a, s2.b, s1.b)) return true;
  return false;
}

double segment_segment_distance(const Segment& s1, const Segment& s2) {
  if (segments_intersect(s1, s2)) return 0.0;
  return std::min({point_segment_distance(s1.a, s2), point_segment_distance(s1.b, s2),
                   point_segment_distance(s2.a, s1), point_segment_distance(s2.b, s1)});
}

bool triangle_contains(const Triangle& t, Vec2 z) {
  const double scale = triangle_scale(t);
  const double area_eps = 1e-12 * scale * scale;
  const double area = orientation(t.v0, t.v1, t.v2);
  if (std::abs(area) > area_eps) {
    const double d0 = orientation(t.v0, t.v1, z);
    const double d1 = orientation(t.v1, t.v2, z);
    const double d2 = orientation(t.v2, t.v0, z);
    const bool has_neg = d0 < -area_eps || d1 < -area_eps || d2 < -area_eps;
    const bool has_pos = d0 > area_eps || d1 > area_eps || d2 > area_eps;
    if (!(has_neg && has_pos)) {
      // All signs agree with the orientation, or z sits on an edge line; the
      // edge-distance check below settles points near an extended edge line.
      const int s = sign(area);
      if ((s > 0 && !has_neg) || (s < 0 && !has_pos)) return true;
    }
  }
  double d = std::numeric_limits<double>::infinity();
  for (const Segment& e : t.edges()) d = std::min(d, point_segment_distance(z, e));
  return d <= 1e-12 * scale;
}

double point_triangle_distance(const Triangle& t, Vec2 z) {
  if (triangle_contains(t, z)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (const Segment& e : t.edges()) d = std::min(d, point_segment_distance(z, e));
  return d;
}

double segment_triangle_distance(const Segment& s, const Triangle& t) {
  if (triangle_contains(t, s.a) || triangle_contains(t, s.b)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (const Segment& e : t.edges()) d = std::min(d, segment_segment_distance(s, e));
  return d;
}

double polygon_boundary_distance(const Polygon& p, Vec2 z) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) d = std::min(d, point_segment_distance(z, p.edge(i)));
  return d;
}

bool polygon_contains(const Polygon& p, Vec2 z) {
  bool inside = false;
  const auto v = p.vertices();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Segment e{v[j], v[i]};
    if (orientation(e.a, e.b, z) == 0.0 && on_collinear_segment(e.a, e.b, z)) return true;
    if ((v[i].y > z.y) != (v[j].y > z.y)) {
      const double x_cross = v[j].x + (z.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (z.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_point_distance(const Polygon& p, Vec2 z) {
  const double d = polygon_boundary_distance(p, z);
  if (d == 0.0) return 0.0;
  return polygon_contains(p, z) ? -d : d;
}

}  // namespace headway
