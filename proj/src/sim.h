// Copyright 2026 The kdfabrics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KDFABRICS_SRC_SIM_H_
#define KDFABRICS_SRC_SIM_H_

// Scenario simulator: semi-implicit Euler integration of the commanded
// accelerations, a constant-velocity projectile obstacle, per-step logging,
// and summary metrics.  The rollout is kinematic -- commanded accelerations
// are integrated directly (perfect tracking) while inverse-dynamics torques
// are computed for the logs.

#include <optional>
#include <string>
#include <vector>

#include "controller.h"

namespace kdf {

// Constant-velocity projectile.  At launch_time it is aimed at the current
// position of `aim` and flies with the given speed until the horizon ends.
// A pass with center distance <= radius counts as a hit.
struct ObstacleSpec {
  Vec2 start = Vec2::Zero();
  double radius = 0.02;       // m, > 0
  double launch_time = 0.;
  double speed = 1.;          // m/s
  ControlPoint aim;
  // When set, the projectile additionally falls under the model's gravity
  // after launch (parabolic flight); off by default (straight-line flight).
  bool ballistic = false;
};

struct RunSettings {
  double dt = 1e-3;            // s
  double duration = 5.;        // s
  PolicyMode mode = PolicyMode::kGated;
  double eps_gate = kDefaultEpsGate;
  // Divergence guard: abort when any |qd_i| exceeds this.
  double divergence_speed = 100.;
};

// One per-step record of everything the benchmark and the analysis scripts
// need.
struct StepLog {
  double t = 0.;
  Vec q;
  Vec dq;
  Vec ddq;
  Vec tau;
  Vec2 ee;            // end-effector position
  Vec2 obstacle;      // obstacle position (1e9 when absent)
  double min_dist = 0.;  // distance from obstacle to nearest tracked point
  double iter_us = 0.;
  bool violation = false;  // any joint outside its limits at this step
};

struct RolloutResult {
  std::vector<StepLog> steps;
  bool diverged = false;
  double divergence_time = -1.;
  // Summary metrics.
  double mean_iter_us = 0.;
  double std_iter_us = 0.;
  double median_iter_us = 0.;
  double min_obstacle_dist = std::numeric_limits<double>::infinity();
  double max_limit_violation = 0.;  // rad beyond [lower, upper]
  double final_tracking_error = 0.; // metres, end effector to its target
};

struct Scenario {
  ChainModel model;
  Vec q0;
  Vec dq0;
  std::vector<BehaviorSpec> behaviors;
  BehaviorTree tree;
  std::optional<ObstacleSpec> obstacle;
  RunSettings run;
  // Points whose obstacle clearance is tracked; defaults to the end effector.
  std::vector<ControlPoint> tracked_points;
};

// Simulate the scenario for its full horizon (or until divergence).  Per
// step: tree tick + control step, semi-implicit Euler integration
//   dq' = dq + ddq dt;  q' = q + dq' dt,
// then the obstacle advances by its constant velocity.  min_dist is measured
// after the state update, from the obstacle to the nearest tracked point,
// only while the obstacle is in flight.
RolloutResult rollout(Scenario& scenario);

// Write per-step records as CSV: t, q*, dq*, ee_x, ee_y, obs_x, obs_y,
// min_dist, iter_us, viol.  Throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const ChainModel& model,
               const RolloutResult& result);

// Timing summary over control iterations, all in milliseconds.
struct TimingSummary {
  double mean_ms = 0.;
  double std_ms = 0.;
  double median_ms = 0.;
  double p99_ms = 0.;
  int samples = 0;
};

// Run `iterations` control steps of the scenario (iterations >= 100) and
// summarize their wall times, discarding the first 10% as warm-up.  Only the
// post-tree-tick control region is timed.
TimingSummary benchmark(Scenario& scenario, int iterations);

}  // namespace kdf

#endif  // KDFABRICS_SRC_SIM_H_
