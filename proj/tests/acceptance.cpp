#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "headway/properties.hpp"
#include "headway/scenario.hpp"

using namespace headway;

namespace {

using Clock = std::chrono::steady_clock;

const std::filesystem::path kScenarioDir = HEADWAY_SCENARIO_DIR;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* title, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %d: %s: %s\n", passed ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!passed) ++failures;
}

std::string describe(const std::vector<PropertyResult>& results) {
  std::string out;
  char buf[160];
  for (const PropertyResult& r : results) {
    std::snprintf(buf, sizeof buf, "%s%s=%.3g (tol %.3g)", out.empty() ? "" : ", ", r.name.c_str(), r.worst,
                  r.tolerance);
    out += buf;
  }
  return out;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  for (const PropertyResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

struct Key {
  std::string scenario;
  PredictionMethod method;
  double headway_coeff;
  bool operator<(const Key& o) const {
    return std::tie(scenario, method, headway_coeff) < std::tie(o.scenario, o.method, o.headway_coeff);
  }
};

}  // namespace

int main() {
  const PropertyOptions opt;  // seed 1, 10^4 static samples, 200 trajectories, 10^3 boundary states

  {
    const auto start = Clock::now();
    const std::vector<PropertyResult> lemmas = {check_goal_equivalence(opt), check_segment_membership(opt),
                                                check_distance_order(opt), check_alignment_monotone(opt),
                                                check_forward_motion(opt)};
    const double elapsed = seconds_since(start);
    char timing[64];
    std::snprintf(timing, sizeof timing, "; %.2f s (budget 30 s)", elapsed);
    report(1, "lemma suite", all_passed(lemmas) && elapsed < 30.0, describe(lemmas) + timing);
  }

  {
    const auto start = Clock::now();
    const std::vector<PropertyResult> sets = {check_containment_circle(opt), check_containment_triangle_bound(opt),
                                              check_containment_triangle(opt)};
    const double elapsed = seconds_since(start);
    char timing[64];
    std::snprintf(timing, sizeof timing, "; %.2f s (budget 60 s)", elapsed);
    report(2, "prediction containment", all_passed(sets) && elapsed < 60.0, describe(sets) + timing);
  }

  {
    const PropertyResult r = check_positive_inclusion(opt);
    report(3, "positive inclusion", r.passed, describe({r}) + " " + r.detail);
  }

  {
    const PropertyResult r = check_radius_decay(opt);
    report(4, "radius decay", r.passed, describe({r}) + " " + r.detail);
  }

  {
    const PropertyResult r = check_branch_continuity(opt);
    report(5, "branch continuity", r.passed, describe({r}) + " over " + std::to_string(r.samples) + " states");
  }

  // Criteria 6 and 7 share the episode runs.
  std::map<Key, EpisodeSummary> runs;
  const std::vector<PredictionMethod> methods = {PredictionMethod::circle, PredictionMethod::triangle,
                                                 PredictionMethod::forward_sim};
  {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (const char* name : {"office", "empty", "corridor", "slalom", "doorway"}) {
      const Scenario s = load_scenario(kScenarioDir / (std::string(name) + ".json"));
      for (PredictionMethod m : methods) {
        const EpisodeResult r =
            run_episode(s.environment, s.path, s.controller, m, s.sim, s.initial_theta);
        bool monotone = true;
        for (std::size_t i = 1; i < r.samples.size(); ++i) {
          monotone = monotone && r.samples[i].state.s >= r.samples[i - 1].state.s;
        }
        const bool good = !r.summary.collision && r.summary.converged && r.summary.final_goal_error < 1e-3 && monotone;
        ok = ok && good;
        if (!good) {
          char buf[200];
          std::snprintf(buf, sizeof buf, " [%s/%s: collision=%d converged=%d error=%.2e monotone=%d]", name,
                        std::string(to_string(m)).c_str(), r.summary.collision, r.summary.converged,
                        r.summary.final_goal_error, monotone);
          detail += buf;
        }
        runs[{name, m, s.controller.headway_coeff}] = r.summary;
      }
    }
    const double elapsed = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf, "15 episodes, no collision, final error < 1e-3, s monotone; %.1f s (budget 300 s)",
                  elapsed);
    report(6, "governor safety and convergence", ok && elapsed < 300.0, buf + detail);
  }

  {
    const Scenario office = load_scenario(kScenarioDir / "office.json");
    const ControllerParams wide(0.75, office.controller.ref_gain, office.controller.goal_tolerance);
    for (PredictionMethod m : methods) {
      runs[{"office", m, 0.75}] =
          run_episode(office.environment, office.path, wide, m, office.sim, office.initial_theta).summary;
    }
    auto time = [&](PredictionMethod m, double eps) { return runs.at({"office", m, eps}).travel_time; };
    const double fs = time(PredictionMethod::forward_sim, 0.5);
    const double tri = time(PredictionMethod::triangle, 0.5);
    const double circ = time(PredictionMethod::circle, 0.5);
    bool ok = fs <= tri && tri < circ;
    std::string detail;
    char buf[200];
    std::snprintf(buf, sizeof buf, "office eps 0.5: forward-sim %.3f s <= triangle %.3f s < circle %.3f s", fs, tri,
                  circ);
    detail += buf;
    for (PredictionMethod m : methods) {
      const double a = time(m, 0.5), b = time(m, 0.75);
      ok = ok && a < b;
      std::snprintf(buf, sizeof buf, "; %s eps 0.5 %.3f s < 0.75 %.3f s", std::string(to_string(m)).c_str(), a, b);
      detail += buf;
    }
    const double cost_ratio = runs.at({"office", PredictionMethod::forward_sim, 0.5}).seconds_per_evaluation /
                              runs.at({"office", PredictionMethod::triangle, 0.5}).seconds_per_evaluation;
    ok = ok && cost_ratio >= 10.0;
    std::snprintf(buf, sizeof buf, "; governor cost forward-sim/triangle %.1fx (>= 10x)", cost_ratio);
    detail += buf;
    report(7, "method and coefficient orderings", ok, detail);
  }

  {
    const PropertyResult order = check_rk4_order(opt);
    const PropertyResult constraint = check_nonholonomic(opt);
    report(8, "numerics", order.passed && constraint.passed,
           order.detail + "; nonholonomic " + describe({constraint}) + " (rounding only)");
  }

  {
    const PropertyResult r = check_fixed_headway_offset(opt);
    report(9, "fixed-headway offset", r.passed, describe({r}) + " over " + std::to_string(r.samples) + " runs");
  }

  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
