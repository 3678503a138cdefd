#include "headway/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "headway/integrator.hpp"
#include "headway/prediction.hpp"
#include "headway/unicycle.hpp"

namespace headway {

namespace {

constexpr double kPi = std::numbers::pi;

// Independent stream per check, so adding a check does not shift the others.
std::mt19937_64 make_rng(const PropertyOptions& opt, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng); }

Vec2 random_point(std::mt19937_64& rng, double half_width) {
  return {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width)};
}

struct Case {
  UnicycleState state;
  Vec2 goal;
  ControllerParams params;
};

Case random_case(std::mt19937_64& rng, double eps_lo, double eps_hi, double tolerance) {
  const Vec2 goal = random_point(rng, 5.0);
  Vec2 p = random_point(rng, 5.0);
  while (distance(p, goal) < 0.05) p = random_point(rng, 5.0);
  const double theta = uniform(rng, -kPi, kPi);
  return {UnicycleState(p, theta), goal,
          ControllerParams(uniform(rng, eps_lo, eps_hi), uniform(rng, 0.5, 2.0), tolerance)};
}

// Places the robot so that its goal alignment equals epsilon.
Case boundary_case(std::mt19937_64& rng) {
  Case c = random_case(rng, 0.05, 0.95, 0.0);
  const Vec2 to_goal = c.goal - c.state.position;
  const double side = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  const double theta = std::atan2(to_goal.y, to_goal.x) + side * std::acos(c.params.headway_coeff);
  c.state = UnicycleState(c.state.position, theta);
  return c;
}

// Time for the headway point to shrink the robot goal distance below `radius`.
double convergence_budget(const Case& c, double radius) {
  const double h0 = distance(headway_point(c.state, c.goal, c.params), c.goal);
  const double bound = std::log(h0 / ((1.0 - c.params.headway_coeff) * radius)) / c.params.ref_gain;
  return std::max(bound, 0.0) + 1.0;
}

ClosedLoopTrajectory run_case(const Case& c, const PropertyOptions& opt) {
  return simulate_fixed_goal(c.state, c.goal, c.params, opt.step, convergence_budget(c, opt.stop_radius),
                             opt.stop_radius);
}

ControllerParams stopping_params(const Case& c, const PropertyOptions& opt) {
  return ControllerParams(c.params.headway_coeff, c.params.ref_gain, opt.stop_radius);
}

PropertyResult finish(std::string name, double worst, double tolerance, std::size_t samples, std::string detail = {}) {
  PropertyResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tolerance = tolerance;
  r.samples = samples;
  r.passed = std::isfinite(worst) && worst <= tolerance;
  r.detail = std::move(detail);
  return r;
}

// Smallest total distance between two vertex triples over all pairings.
double vertex_set_mismatch(const Triangle& a, const Triangle& b) {
  std::array<int, 3> perm = {0, 1, 2};
  const auto va = a.vertices(), vb = b.vertices();
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, distance(va[i], vb[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

template <class SetFn>
PropertyResult containment(const PropertyOptions& opt, std::string name, std::uint64_t salt, SetFn make_set) {
  auto rng = make_rng(opt, salt);
  double worst = 0.0;
  std::size_t points = 0;
  for (std::size_t i = 0; i < opt.trajectories; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    c.params = stopping_params(c, opt);
    const PredictionSet set = make_set(c);
    for (const UnicycleState& s : run_case(c, opt).states) {
      worst = std::max(worst, prediction_distance(set, s.position));
      ++points;
    }
  }
  return finish(std::move(name), worst, 1e-6, opt.trajectories, std::to_string(points) + " trajectory samples");
}

}  // namespace

PropertyResult check_goal_equivalence(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 1);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < opt.static_samples; ++i) {
    Case c = random_case(rng, 0.01, 0.99, 0.0);
    if (i % 20 == 0) c.state = UnicycleState(c.goal, c.state.orientation);
    const Vec2 h = headway_point(c.state, c.goal, c.params);
    const double r = distance(c.state.position, c.goal);
    const bool at_goal = c.state.position == c.goal;
    if ((h == c.goal) != at_goal) ++violations;
    if (!at_goal && distance(h, c.goal) < (1.0 - c.params.headway_coeff) * r * (1.0 - 1e-12)) ++violations;
  }
  return finish("goal_equivalence", static_cast<double>(violations), 0.0, opt.static_samples, "violations");
}

PropertyResult check_segment_membership(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 2);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.static_samples; ++i) {
    const Case c = random_case(rng, 0.01, 0.99, 0.0);
    const HeadwayFrame f = headway_frame(c.state, c.goal, c.params);
    worst = std::max(worst, point_segment_distance(c.state.position, {f.projected, f.extended}));
  }
  return finish("segment_membership", worst, 1e-9, opt.static_samples, "max off-segment distance [m]");
}

PropertyResult check_distance_order(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 3);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.static_samples; ++i) {
    const Case c = random_case(rng, 0.01, 0.99, 0.0);
    const HeadwayFrame f = headway_frame(c.state, c.goal, c.params);
    const double eps = c.params.headway_coeff;
    const double r = distance(c.state.position, c.goal);
    const double r_proj = distance(f.projected, c.goal);
    const double r_ext = distance(f.extended, c.goal);
    worst = std::max({worst, (r_proj - r) / r, (r - r_ext) / r,
                      std::abs(r_ext - r_proj / std::sqrt(1.0 - eps * eps)) / r_ext});
  }
  return finish("distance_order", worst, 1e-12, opt.static_samples, "max relative violation");
}

PropertyResult check_alignment_monotone(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.trajectories; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    c.params = stopping_params(c, opt);
    const auto traj = run_case(c, opt);
    double previous = goal_alignment(traj.states.front(), c.goal);
    for (const UnicycleState& s : traj.states) {
      if (s.position == c.goal) break;
      const double a = goal_alignment(s, c.goal);
      worst = std::max(worst, previous - a);
      previous = a;
    }
  }
  return finish("alignment_monotone", worst, 1e-6, opt.trajectories, "max alignment decrease");
}

PropertyResult check_forward_motion(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 5);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < opt.trajectories; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    c.params = stopping_params(c, opt);
    // Turn the robot so that it starts goal-aligned.
    const Vec2 to_goal = c.goal - c.state.position;
    const double spread = std::acos(c.params.headway_coeff) * uniform(rng, 0.0, 0.99);
    c.state = UnicycleState(c.state.position, std::atan2(to_goal.y, to_goal.x) + spread);
    const auto traj = run_case(c, opt);
    double previous = std::numeric_limits<double>::infinity();
    for (const UnicycleState& s : traj.states) {
      const double r = distance(s.position, c.goal);
      if (r <= opt.stop_radius) break;
      if (!(adaptive_headway_control(s, c.goal, c.params).linear > 0.0)) ++violations;
      if (!(r < previous)) ++violations;
      previous = r;
    }
  }
  return finish("forward_motion", static_cast<double>(violations), 0.0, opt.trajectories, "violations");
}

PropertyResult check_global_convergence(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 6);
  const std::size_t runs = std::max<std::size_t>(opt.trajectories / 2, 1);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 1e-4);
    const auto traj = simulate_fixed_goal(c.state, c.goal, c.params, opt.step, convergence_budget(c, 1e-3), 1e-3);
    if (!traj.reached_goal) ++failures;
  }
  return finish("global_convergence", static_cast<double>(failures), 0.0, runs, "runs missing the time budget");
}

PropertyResult check_headway_rate(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 7);
  const std::size_t runs = std::max<std::size_t>(opt.trajectories / 10, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < runs; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    const auto traj = simulate_fixed_goal(c.state, c.goal, c.params, opt.step, 3.0, 0.0);
    const double scale = distance(headway_point(c.state, c.goal, c.params), c.goal);
    for (std::size_t k = 1; k + 1 < traj.states.size(); ++k) {
      const double dt = traj.times[k + 1] - traj.times[k - 1];
      const Vec2 rate = (headway_point(traj.states[k + 1], c.goal, c.params) -
                         headway_point(traj.states[k - 1], c.goal, c.params)) /
                        dt;
      const Vec2 expected = (headway_point(traj.states[k], c.goal, c.params) - c.goal) * -c.params.ref_gain;
      worst = std::max(worst, distance(rate, expected) / scale);
    }
  }
  return finish("headway_rate", worst, 1e-3, runs, "max relative rate mismatch");
}

PropertyResult check_fixed_headway_offset(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 8);
  const std::size_t runs = std::max<std::size_t>(opt.trajectories / 10, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < runs; ++i) {
    const Case c = random_case(rng, 0.5, 0.5, 0.0);
    const double d = uniform(rng, 0.1, 1.0);
    const double gain = c.params.ref_gain;
    auto field = [&](double, const StateVector<3>& y) -> StateVector<3> {
      const UnicycleState s{{y[0], y[1]}, y[2]};
      const StateDerivative der = unicycle_derivative(s, fixed_headway_control(s, c.goal, gain, d));
      return {der.velocity.x, der.velocity.y, der.angular_rate};
    };
    const auto traj = integrate<3>(field, {c.state.position.x, c.state.position.y, c.state.orientation}, opt.step,
                                   30.0 / gain, [](double, const StateVector<3>&) { return false; });
    const auto& y = traj.states.back();
    worst = std::max(worst, std::abs(distance({y[0], y[1]}, c.goal) - d));
  }
  return finish("fixed_headway_offset", worst, 1e-3, runs, "max |final distance - fixed distance| [m]");
}

PropertyResult check_containment_circle(const PropertyOptions& opt) {
  return containment(opt, "containment_circle", 9,
                     [](const Case& c) -> PredictionSet { return circular_prediction(c.state, c.goal, c.params); });
}

PropertyResult check_containment_triangle_bound(const PropertyOptions& opt) {
  return containment(opt, "containment_triangle_bound", 10,
                     [](const Case& c) -> PredictionSet { return triangular_bound(c.state, c.goal, c.params); });
}

PropertyResult check_containment_triangle(const PropertyOptions& opt) {
  return containment(opt, "containment_triangle", 11, [](const Case& c) -> PredictionSet {
    return triangular_prediction(c.state, c.goal, c.params);
  });
}

PropertyResult check_positive_inclusion(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 12);
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.trajectories; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    c.params = stopping_params(c, opt);
    // A radius below the running minimum of all earlier radii is equivalent
    // to the disk at t' being inside every disk at t <= t'.
    double running_min = std::numeric_limits<double>::infinity();
    for (const UnicycleState& s : run_case(c, opt).states) {
      const double r = circular_prediction(s, c.goal, c.params).radius;
      if (r > running_min) {
        ++violations;
        worst = std::max(worst, r - running_min);
      }
      running_min = std::min(running_min, r);
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "violating pairs, largest radius increase %.3g m", worst);
  return finish("positive_inclusion", static_cast<double>(violations), 0.0, opt.trajectories, detail);
}

PropertyResult check_radius_decay(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 13);
  double worst = 0.0;
  std::size_t unconverged = 0;
  for (std::size_t i = 0; i < opt.trajectories; ++i) {
    Case c = random_case(rng, 0.1, 0.9, 0.0);
    c.params = stopping_params(c, opt);
    const auto traj = run_case(c, opt);
    if (!traj.reached_goal) ++unconverged;
    const UnicycleState& last = traj.states.back();
    worst = std::max({worst, prediction_goal_radius(circular_prediction(last, c.goal, c.params), c.goal),
                      prediction_goal_radius(triangular_bound(last, c.goal, c.params), c.goal),
                      prediction_goal_radius(triangular_prediction(last, c.goal, c.params), c.goal)});
  }
  if (unconverged > 0) worst = std::numeric_limits<double>::infinity();
  return finish("radius_decay", worst, 1e-3, opt.trajectories,
                "max prediction radius at stop [m], " + std::to_string(unconverged) + " runs unconverged");
}

PropertyResult check_branch_continuity(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 14);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.boundary_samples; ++i) {
    const Case c = boundary_case(rng);
    worst = std::max(worst, vertex_set_mismatch(triangular_prediction_aligned_branch(c.state, c.goal, c.params),
                                                triangular_prediction_misaligned_branch(c.state, c.goal, c.params)));
  }
  return finish("branch_continuity", worst, 1e-9, opt.boundary_samples, "max vertex mismatch [m]");
}

PropertyResult check_branch_distance_agreement(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 15);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.boundary_samples; ++i) {
    const Case c = boundary_case(rng);
    const Vec2 z = random_point(rng, 8.0);
    const PredictionSet aligned = triangular_prediction_aligned_branch(c.state, c.goal, c.params);
    const PredictionSet misaligned = triangular_prediction_misaligned_branch(c.state, c.goal, c.params);
    worst = std::max(worst, std::abs(prediction_distance(aligned, z) - prediction_distance(misaligned, z)));
  }
  return finish("branch_distance_agreement", worst, 1e-9, opt.boundary_samples, "max distance gap [m]");
}

PropertyResult estimate_distance_lipschitz(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 16);
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < opt.static_samples; ++i) {
    const Case c = random_case(rng, 0.1, 0.9, 0.0);
    const Vec2 z = random_point(rng, 8.0);
    const Vec2 dp = random_point(rng, 1e-3 / std::sqrt(2.0));
    const double dtheta = uniform(rng, -1e-3, 1e-3);
    const UnicycleState moved(c.state.position + dp, c.state.orientation + dtheta);
    const double step = norm(dp) + std::abs(dtheta);
    if (!(step > 0.0)) continue;
    for (PredictionMethod m : {PredictionMethod::circle, PredictionMethod::triangle}) {
      const double before = prediction_distance(predict(m, c.state, c.goal, c.params), z);
      const double after = prediction_distance(predict(m, moved, c.goal, c.params), z);
      lipschitz = std::max(lipschitz, std::abs(after - before) / step);
    }
  }
  return finish("distance_lipschitz", lipschitz, std::numeric_limits<double>::max(), opt.static_samples,
                "empirical Lipschitz constant of the prediction distance");
}

PropertyResult check_rk4_order(const PropertyOptions&) {
  // Constant input traces a circular arc with a closed-form endpoint.
  const double v = 1.0, w = 0.8, theta0 = 0.3, horizon = 5.0;
  auto field = [&](double, const StateVector<3>& y) -> StateVector<3> {
    return {v * std::cos(y[2]), v * std::sin(y[2]), w};
  };
  const Vec2 exact{(v / w) * (std::sin(theta0 + w * horizon) - std::sin(theta0)),
                   (v / w) * (std::cos(theta0) - std::cos(theta0 + w * horizon))};
  auto error = [&](double step) {
    const auto traj = integrate<3>(field, {0.0, 0.0, theta0}, step, horizon,
                                   [](double, const StateVector<3>&) { return false; });
    const auto& y = traj.states.back();
    return distance({y[0], y[1]}, exact);
  };
  const double ratio = error(0.1) / error(0.05);
  char detail[96];
  std::snprintf(detail, sizeof detail, "step-halving error ratio %.3f, expected within [12, 20]", ratio);
  PropertyResult r = finish("rk4_order", std::abs(ratio - 16.0), 4.0, 2, detail);
  r.passed = ratio >= 12.0 && ratio <= 20.0;
  return r;
}

PropertyResult check_nonholonomic(const PropertyOptions& opt) {
  auto rng = make_rng(opt, 17);
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.static_samples; ++i) {
    const Case c = random_case(rng, 0.1, 0.9, 1e-4);
    const ControlInput u = adaptive_headway_control(c.state, c.goal, c.params);
    const StateDerivative d = unicycle_derivative(c.state, u);
    if (u.linear == 0.0) continue;
    const double lateral = std::abs(dot(heading_normal(c.state.orientation), d.velocity));
    worst = std::max(worst, lateral / std::abs(u.linear));
  }
  // The lateral velocity vanishes identically; what remains is rounding in
  // the products v cos(theta) and v sin(theta), a few ulp of |v|.
  return finish("nonholonomic", worst, 8.0 * std::numeric_limits<double>::epsilon(), opt.static_samples,
                "max |n^T dx/dt| / |v|");
}

std::vector<PropertyResult> run_property_suite(const PropertyOptions& opt) {
  return {check_goal_equivalence(opt),
          check_segment_membership(opt),
          check_distance_order(opt),
          check_alignment_monotone(opt),
          check_forward_motion(opt),
          check_global_convergence(opt),
          check_headway_rate(opt),
          check_fixed_headway_offset(opt),
          check_containment_circle(opt),
          check_containment_triangle_bound(opt),
          check_containment_triangle(opt),
          check_positive_inclusion(opt),
          check_radius_decay(opt),
          check_branch_continuity(opt),
          check_branch_distance_agreement(opt),
          estimate_distance_lipschitz(opt),
          check_rk4_order(opt),
          check_nonholonomic(opt)};
}

}  // namespace headway
