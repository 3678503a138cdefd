#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>

#include "headway/simulation.hpp"

using namespace headway;

namespace {

Polygon square(double lo, double hi) { return Polygon({{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}}); }

const ControllerParams kParams(0.5, 1.0, 1e-4);

bool s_monotone(const EpisodeResult& r) {
  for (std::size_t i = 1; i < r.samples.size(); ++i) {
    if (r.samples[i].state.s < r.samples[i - 1].state.s) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("SimConfig validation") {
    SimConfig c;
    CHECK_NOTHROW(c.validate());
    c.step = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SimConfig{};
    c.gains.path_gain = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SimConfig{};
    c.prediction.horizon = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("governor_derivative stops the path parameter when the prediction touches the boundary") {
    const Environment env(square(0, 10), {}, 0.5);
    const ReferencePath path({{1, 5}, {9, 5}});
    // The robot sits closer to the wall than its radius: zero safety.
    const GovernorState gs{2.0, UnicycleState({0.3, 5}, 0.0)};
    const GovernorEvaluation e = governor_derivative(gs, env, path, kParams, PredictionMethod::triangle, SimConfig{});
    CHECK(e.safety == 0.0);
    CHECK(e.path_rate == 0.0);
    CHECK(e.control.linear > 0.0);
    CHECK(distance(e.local_goal, {3, 5}) <= 1e-12);
  }

  TEST_CASE("governor_derivative at the path end") {
    const Environment env(square(0, 10), {}, 0.5);
    const ReferencePath path({{1, 5}, {9, 5}});
    const GovernorState gs{path.length(), UnicycleState({8, 5}, 0.0)};
    for (PredictionMethod m : {PredictionMethod::circle, PredictionMethod::triangle, PredictionMethod::forward_sim}) {
      const GovernorEvaluation e = governor_derivative(gs, env, path, kParams, m, SimConfig{});
      CHECK(e.safety >= 0.0);
      CHECK(e.path_rate == 0.0);
    }
  }

  TEST_CASE("governor_derivative far from obstacles follows the path gain") {
    const Environment env(square(-50, 50), {}, 0.5);
    const ReferencePath path({{0, 0}, {1, 0}});
    const GovernorState gs{0.25, UnicycleState({0.2, 0}, 0.0)};
    const GovernorEvaluation e = governor_derivative(gs, env, path, kParams, PredictionMethod::triangle, SimConfig{});
    CHECK(e.path_rate == doctest::Approx(4.0 * (1.0 - 0.25)));
  }

  TEST_CASE("free-space path parameter follows the closed-form exponential") {
    // With the safety term inactive, ds/dt = k (L - s) gives s = L (1 - exp(-k t)).
    const Environment env(square(-50, 50), {}, 0.5);
    const ReferencePath path({{0, 0}, {1, 0}});
    SimConfig cfg;
    cfg.step = 0.01;
    const EpisodeResult r = run_episode(env, path, kParams, PredictionMethod::triangle, cfg, 0.0);
    CHECK(r.summary.converged);
    CHECK_FALSE(r.summary.collision);
    for (const EpisodeSample& s : r.samples) {
      CHECK(std::abs(s.state.s - (1.0 - std::exp(-4.0 * s.t))) <= 1e-6);
      CHECK(std::abs(s.state.unicycle.position.y) <= 1e-12);
    }
    CHECK(r.summary.travel_time >= std::log(1.0 / cfg.goal_tolerance) / 4.0);
  }

  TEST_CASE("straight run in an empty room") {
    const Environment env(square(0, 10), {}, 0.3);
    const ReferencePath path({{2, 5}, {8, 5}});
    const EpisodeResult r = run_episode(env, path, kParams, PredictionMethod::triangle, SimConfig{}, 0.0);
    CHECK(r.summary.converged);
    CHECK_FALSE(r.summary.collision);
    CHECK(r.summary.min_margin > 0.0);
    CHECK(r.summary.final_goal_error < 1e-3);
    CHECK(s_monotone(r));
    CHECK(r.summary.avg_speed == doctest::Approx(r.summary.distance_travelled / r.summary.travel_time));
    CHECK(r.samples.front().t == 0.0);
    CHECK(r.samples.back().t == doctest::Approx(r.summary.travel_time));
    CHECK(r.summary.governor_evaluations > 0);
  }

  TEST_CASE("step halving barely moves the final state") {
    const Environment env(Polygon({{0, 0}, {8, 0}, {8, 8}, {6, 8}, {6, 2}, {0, 2}}), {}, 0.3);
    const ReferencePath path({{0.8, 0.8}, {7.2, 0.8}, {7.2, 7.2}});
    SimConfig coarse;
    coarse.step = 0.01;
    coarse.max_time = 20.0;
    SimConfig fine = coarse;
    fine.step = 0.005;
    const double theta = default_initial_theta(path);
    // The triangle safety distance switches between nearest features and
    // alignment branches, so its right-hand side is only piecewise smooth.
    for (auto [m, tol] : {std::pair{PredictionMethod::circle, 1e-6}, std::pair{PredictionMethod::triangle, 1e-5}}) {
      const EpisodeResult a = run_episode(env, path, kParams, m, coarse, theta);
      const EpisodeResult b = run_episode(env, path, kParams, m, fine, theta);
      const Vec2 pa = a.samples.back().state.unicycle.position;
      const Vec2 pb = b.samples.back().state.unicycle.position;
      MESSAGE(to_string(m) << ": final position change " << distance(pa, pb) << " at s = " << a.samples.back().state.s);
      CHECK(distance(pa, pb) < tol);
    }
  }

  TEST_CASE("episode reports non-convergence when time runs out") {
    const Environment env(square(0, 10), {}, 0.3);
    const ReferencePath path({{2, 5}, {8, 5}});
    SimConfig cfg;
    cfg.max_time = 1.0;
    const EpisodeResult r = run_episode(env, path, kParams, PredictionMethod::triangle, cfg, 0.0);
    CHECK_FALSE(r.summary.converged);
    CHECK(r.samples.back().t == doctest::Approx(1.0));
  }

  TEST_CASE("episode refuses a path without clearance") {
    const Environment env(square(0, 10), {square(4, 6)}, 0.3);
    const ReferencePath path({{2, 5}, {8, 5}});
    CHECK_THROWS_AS(run_episode(env, path, kParams, PredictionMethod::triangle, SimConfig{}, 0.0), ClearanceError);
  }

  TEST_CASE("methods agree in an empty room") {
    const Environment env(square(0, 10), {}, 0.3);
    const ReferencePath path({{2, 5}, {8, 5}});
    const auto results = compare_methods(env, path, kParams, SimConfig{}, 0.0,
                                         {PredictionMethod::circle, PredictionMethod::triangle,
                                          PredictionMethod::forward_sim});
    REQUIRE(results.size() == 3);
    double lo = 1e9, hi = 0.0;
    for (const EpisodeResult& r : results) {
      MESSAGE(to_string(r.method) << ": " << r.summary.travel_time << " s");
      CHECK(r.summary.converged);
      lo = std::min(lo, r.summary.travel_time);
      hi = std::max(hi, r.summary.travel_time);
    }
    CHECK(hi / lo < 1.05);
  }
}
