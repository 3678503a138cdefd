#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <numbers>
#include <random>

#include "headway/geom.hpp"

using namespace headway;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-9;

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

void check_vec(Vec2 actual, Vec2 expected, double tol = kTol) {
  CHECK(std::abs(actual.x - expected.x) <= tol);
  CHECK(std::abs(actual.y - expected.y) <= tol);
}

// Barycentric coordinates by Cramer's rule; only used on non-degenerate triangles.
std::array<double, 3> barycentric(const Triangle& t, Vec2 z) {
  const double det = (t.v1.x - t.v0.x) * (t.v2.y - t.v0.y) - (t.v2.x - t.v0.x) * (t.v1.y - t.v0.y);
  const double l1 = ((z.x - t.v0.x) * (t.v2.y - t.v0.y) - (t.v2.x - t.v0.x) * (z.y - t.v0.y)) / det;
  const double l2 = ((t.v1.x - t.v0.x) * (z.y - t.v0.y) - (z.x - t.v0.x) * (t.v1.y - t.v0.y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

TEST_SUITE("geom") {
  TEST_CASE("Vec2 rejects non-finite components") {
    CHECK_THROWS_AS(Vec2(std::numeric_limits<double>::quiet_NaN(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Vec2(0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_NOTHROW(Vec2(1.0, -2.0));
  }

  TEST_CASE("rotate examples") {
    check_vec(rotate({1, 0}, kPi / 2), {0, 1});
    check_vec(rotate({0, 0}, 1.3), {0, 0});
    check_vec(rotate({1, 1}, kPi), {-1, -1});
  }

  TEST_CASE("rotate round trip on random vectors") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<> coord(-100.0, 100.0), angle(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
      const Vec2 v{coord(rng), coord(rng)};
      const double a = angle(rng);
      const Vec2 back = rotate(rotate(v, a), -a);
      CHECK(distance(back, v) <= 1e-12 * std::max(1.0, norm(v)));
    }
  }

  TEST_CASE("point_segment_distance examples") {
    const Segment s{{0, 0}, {1, 0}};
    CHECK(point_segment_distance({0, 1}, s) == doctest::Approx(1.0));
    CHECK(point_segment_distance({2, 0}, s) == doctest::Approx(1.0));
    CHECK(point_segment_distance({0.5, 0}, s) == 0.0);
  }

  TEST_CASE("point_segment_distance on a zero-length segment") {
    CHECK(point_segment_distance({3, 4}, {{0, 0}, {0, 0}}) == doctest::Approx(5.0));
  }

  TEST_CASE("segment_segment_distance examples") {
    CHECK(segment_segment_distance({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}) == doctest::Approx(1.0));
    CHECK(segment_segment_distance({{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}) == 0.0);
    CHECK(segment_segment_distance({{0, 0}, {1, 0}}, {{3, 0}, {4, 0}}) == doctest::Approx(2.0));
  }

  TEST_CASE("triangle_contains examples") {
    const Triangle t{{0, 0}, {1, 0}, {0, 1}};
    CHECK(triangle_contains(t, {0.25, 0.25}));
    CHECK_FALSE(triangle_contains(t, {1, 1}));
    CHECK(triangle_contains({{0, 0}, {1, 0}, {2, 0}}, {1.5, 0}));
    CHECK_FALSE(triangle_contains({{0, 0}, {1, 0}, {2, 0}}, {2.5, 0}));
    CHECK_FALSE(triangle_contains({{0, 0}, {1, 0}, {2, 0}}, {1.5, 1e-3}));
  }

  TEST_CASE("triangle_contains on a point triangle") {
    const Triangle t{{1, 2}, {1, 2}, {1, 2}};
    CHECK(triangle_contains(t, {1, 2}));
    CHECK_FALSE(triangle_contains(t, {1, 2.001}));
    CHECK(point_triangle_distance(t, {4, 6}) == doctest::Approx(5.0));
  }

  TEST_CASE("triangle_contains agrees with barycentric coordinates") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<> coord(-10.0, 10.0);
    int checked = 0;
    while (checked < 10000) {
      const Triangle t{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
      if (std::abs(orientation(t.v0, t.v1, t.v2)) < 1e-3) continue;
      const Vec2 z{coord(rng), coord(rng)};
      const auto l = barycentric(t, z);
      const double lmin = std::min({l[0], l[1], l[2]});
      if (std::abs(lmin) < 1e-9) continue;  // too close to an edge to call
      CHECK(triangle_contains(t, z) == (lmin > 0.0));
      ++checked;
    }
  }

  TEST_CASE("point_triangle_distance matches edge distances outside and zero inside") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<> coord(-5.0, 5.0);
    for (int i = 0; i < 2000; ++i) {
      const Triangle t{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
      const Vec2 z{coord(rng), coord(rng)};
      double edge = std::numeric_limits<double>::infinity();
      for (const Segment& e : t.edges()) edge = std::min(edge, point_segment_distance(z, e));
      const double d = point_triangle_distance(t, z);
      if (triangle_contains(t, z)) {
        CHECK(d == 0.0);
      } else {
        CHECK(std::abs(d - edge) <= kTol);
      }
    }
  }

  TEST_CASE("segment_triangle_distance") {
    const Triangle t{{0, 0}, {2, 0}, {0, 2}};
    CHECK(segment_triangle_distance({{0.2, 0.2}, {0.3, 0.3}}, t) == 0.0);
    CHECK(segment_triangle_distance({{-1, 1}, {3, 1}}, t) == 0.0);
    CHECK(segment_triangle_distance({{3, 0}, {3, 3}}, t) == doctest::Approx(1.0));
  }

  TEST_CASE("distances are symmetric, non-negative and obey the triangle inequality") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<> coord(-50.0, 50.0);
    for (int i = 0; i < 5000; ++i) {
      const Vec2 a{coord(rng), coord(rng)}, b{coord(rng), coord(rng)}, c{coord(rng), coord(rng)};
      const Vec2 d{coord(rng), coord(rng)};
      CHECK(distance(a, b) == distance(b, a));
      CHECK(distance(a, b) >= 0.0);
      CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + kTol);
      const double s1 = segment_segment_distance({a, b}, {c, d});
      const double s2 = segment_segment_distance({c, d}, {a, b});
      CHECK(s1 >= 0.0);
      CHECK(std::abs(s1 - s2) <= kTol);
    }
  }

  TEST_CASE("polygon_point_distance examples") {
    const Polygon sq = unit_square();
    CHECK(polygon_point_distance(sq, {0.5, 0.5}) == doctest::Approx(-0.5));
    CHECK(polygon_point_distance(sq, {2, 0.5}) == doctest::Approx(1.0));
    CHECK(polygon_point_distance(sq, {1, 0.5}) == 0.0);
  }

  TEST_CASE("polygon_point_distance on a concave polygon") {
    // U shape open at the top.
    const Polygon u({{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
    CHECK(polygon_contains(u, {0.5, 2}));
    CHECK_FALSE(polygon_contains(u, {1.5, 2}));
    CHECK(polygon_point_distance(u, {1.5, 2}) == doctest::Approx(0.5));
    CHECK(polygon_point_distance(u, {0.5, 0.5}) == doctest::Approx(-0.5));
  }

  TEST_CASE("Polygon constructor validation") {
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);  // clockwise
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);  // bow tie
    CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), std::invalid_argument);  // repeated vertex
    CHECK(unit_square().area() == doctest::Approx(1.0));
    CHECK(unit_square().bounds() == Box{{0, 0}, {1, 1}});
  }

  TEST_CASE("box_distance") {
    CHECK(box_distance({{0, 0}, {1, 1}}, {{2, 0}, {3, 1}}) == doctest::Approx(1.0));
    CHECK(box_distance({{0, 0}, {1, 1}}, {{4, 5}, {5, 6}}) == doctest::Approx(5.0));
    CHECK(box_distance({{0, 0}, {2, 2}}, {{1, 1}, {3, 3}}) == 0.0);
  }
}
