#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace headway {

/// Outcome of one randomized property check. `worst` is the largest observed
/// violation measure (a count for discrete properties) and passes when it does
/// not exceed `tolerance`.
struct PropertyResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::string detail;
};

struct PropertyOptions {
  std::uint64_t seed = 1;
  std::size_t static_samples = 10000;  // random (state, goal, epsilon) draws
  std::size_t trajectories = 200;      // integrated closed-loop runs
  std::size_t boundary_samples = 1000; // states placed on alignment == epsilon
  double step = 0.01;                  // s, RK4 step of the property runs
  double stop_radius = 1e-4;           // m
};

// Headway geometry on random states.
PropertyResult check_goal_equivalence(const PropertyOptions& opt);
PropertyResult check_segment_membership(const PropertyOptions& opt);
PropertyResult check_distance_order(const PropertyOptions& opt);

// Closed-loop behaviour along integrated trajectories.
PropertyResult check_alignment_monotone(const PropertyOptions& opt);
PropertyResult check_forward_motion(const PropertyOptions& opt);
PropertyResult check_global_convergence(const PropertyOptions& opt);
PropertyResult check_headway_rate(const PropertyOptions& opt);
PropertyResult check_fixed_headway_offset(const PropertyOptions& opt);

// Prediction sets.
PropertyResult check_containment_circle(const PropertyOptions& opt);
PropertyResult check_containment_triangle_bound(const PropertyOptions& opt);
PropertyResult check_containment_triangle(const PropertyOptions& opt);
PropertyResult check_positive_inclusion(const PropertyOptions& opt);
PropertyResult check_radius_decay(const PropertyOptions& opt);
PropertyResult check_branch_continuity(const PropertyOptions& opt);
PropertyResult check_branch_distance_agreement(const PropertyOptions& opt);
/// Always passes when finite; `worst` is the calibrated Lipschitz constant.
PropertyResult estimate_distance_lipschitz(const PropertyOptions& opt);

// Numerics.
PropertyResult check_rk4_order(const PropertyOptions& opt);
PropertyResult check_nonholonomic(const PropertyOptions& opt);

std::vector<PropertyResult> run_property_suite(const PropertyOptions& opt);

}  // namespace headway
