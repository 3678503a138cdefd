#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace headway {

/// Point or direction in the plane, in meters. Non-finite components are
/// rejected on construction.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  Vec2(double x_, double y_);

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2 operator/(double k) const { return {x / k, y / k}; }
  Vec2& operator+=(Vec2 o) { return *this = *this + o; }
  Vec2& operator-=(Vec2 o) { return *this = *this - o; }

  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double k, Vec2 v) { return v * k; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double squared_norm(Vec2 v) { return dot(v, v); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Counterclockwise quarter turn, R_{+pi/2} v.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

/// R_angle v.
Vec2 rotate(Vec2 v, double angle);

/// Unit forward direction (cos t, sin t).
inline Vec2 heading(double theta) { return {std::cos(theta), std::sin(theta)}; }
/// Unit left normal (-sin t, cos t) of the forward direction.
inline Vec2 heading_normal(double theta) { return {-std::sin(theta), std::cos(theta)}; }

struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Possibly degenerate triangle; a collinear triangle is the segment hull of
/// its vertices.
struct Triangle {
  Vec2 v0;
  Vec2 v1;
  Vec2 v2;

  std::array<Vec2, 3> vertices() const { return {v0, v1, v2}; }
  std::array<Segment, 3> edges() const { return {{{v0, v1}, {v1, v2}, {v2, v0}}}; }
};

/// Axis-aligned bounding box.
struct Box {
  Vec2 lo;
  Vec2 hi;

  bool operator==(const Box&) const = default;
};

Box bounding_box(std::span<const Vec2> points);
/// Euclidean gap between two boxes; zero when they overlap.
double box_distance(const Box& a, const Box& b);

/// Simple counterclockwise polygon with at least three vertices, closed
/// implicitly. The constructor throws std::invalid_argument otherwise.
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> vertices);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Segment edge(std::size_t i) const { return {vertices_[i], vertices_[(i + 1) % vertices_.size()]}; }
  double area() const;
  const Box& bounds() const { return bounds_; }

  bool operator==(const Polygon&) const = default;

 private:
  std::vector<Vec2> vertices_;
  Box bounds_;
};

/// Twice the signed area of (a, b, c); positive for a left turn.
inline double orientation(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

double signed_area(std::span<const Vec2> ring);

Vec2 closest_point_on_segment(Vec2 z, const Segment& s);
double point_segment_distance(Vec2 z, const Segment& s);
bool segments_intersect(const Segment& s1, const Segment& s2);
double segment_segment_distance(const Segment& s1, const Segment& s2);

/// Closed convex hull membership, exact on the degenerate (collinear) case.
bool triangle_contains(const Triangle& t, Vec2 z);
double point_triangle_distance(const Triangle& t, Vec2 z);
/// Zero when the segment touches or crosses the triangle.
double segment_triangle_distance(const Segment& s, const Triangle& t);

/// Closed polygon membership (boundary counts as inside).
bool polygon_contains(const Polygon& p, Vec2 z);
double polygon_boundary_distance(const Polygon& p, Vec2 z);
/// Signed Euclidean distance to the boundary: positive outside, negative inside.
double polygon_point_distance(const Polygon& p, Vec2 z);

}  // namespace headway
