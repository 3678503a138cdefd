#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "headway/environment.hpp"
#include "headway/prediction.hpp"
#include "headway/unicycle.hpp"

namespace headway {

struct GovernorGains {
  double safety_gain = 4.0;  // k_s, scales the safety distance
  double path_gain = 4.0;    // k_zeta, pulls s toward the path end

  bool operator==(const GovernorGains&) const = default;
};

struct SimConfig {
  double step = 0.005;           // s
  double max_time = 300.0;       // s
  double goal_tolerance = 5e-4;  // m; episode ends once s and p are this close to the path end
  GovernorGains gains;
  ForwardSimConfig prediction;   // used by the forward-sim method only

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Path parameter (arc length) coupled with the robot state.
struct GovernorState {
  double s = 0.0;
  UnicycleState unicycle;
};

struct GovernorEvaluation {
  double path_rate = 0.0;  // ds/dt
  StateDerivative unicycle_rate;
  ControlInput control;
  Vec2 local_goal;
  double safety = 0.0;             // safety distance of the prediction toward the local goal
  double prediction_radius = 0.0;  // prediction radius about the local goal
};

/// Right-hand side of the time-governed path-following dynamics.
GovernorEvaluation governor_derivative(const GovernorState& gs, const Environment& env, const ReferencePath& path,
                                       const ControllerParams& params, PredictionMethod method,
                                       const SimConfig& config);

struct EpisodeSample {
  double t = 0.0;
  GovernorState state;
  ControlInput control;
  double safety = 0.0;
  double prediction_radius = 0.0;
  double margin = 0.0;  // free_space_margin of the robot position
};

struct EpisodeSummary {
  double travel_time = 0.0;
  double min_margin = 0.0;
  double avg_speed = 0.0;  // distance travelled over travel time
  double distance_travelled = 0.0;
  double final_goal_error = 0.0;
  double peak_linear_speed = 0.0;
  double peak_angular_speed = 0.0;
  bool collision = false;
  bool converged = false;
  std::size_t governor_evaluations = 0;
  double seconds_per_evaluation = 0.0;  // wall clock per governor_derivative call
};

struct EpisodeResult {
  PredictionMethod method = PredictionMethod::triangle;
  double headway_coeff = 0.5;
  std::vector<EpisodeSample> samples;
  EpisodeSummary summary;
};

/// Raised when a scenario fails the path clearance gate.
class ClearanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of arc-length samples used by the clearance gate.
std::size_t clearance_samples(const ReferencePath& path);

/// Heading of the first path segment.
double default_initial_theta(const ReferencePath& path);

/// Integrates the governed system from s = 0, p = P(0) until the path end is
/// reached or config.max_time elapses. Throws ClearanceError when the path has
/// no positive clearance.
EpisodeResult run_episode(const Environment& env, const ReferencePath& path, const ControllerParams& params,
                          PredictionMethod method, const SimConfig& config, double initial_theta);

/// One episode per method, in the order given.
std::vector<EpisodeResult> compare_methods(const Environment& env, const ReferencePath& path,
                                           const ControllerParams& params, const SimConfig& config,
                                           double initial_theta, const std::vector<PredictionMethod>& methods);

}  // namespace headway
