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

#ifndef KDFABRICS_SRC_CONFIG_H_
#define KDFABRICS_SRC_CONFIG_H_

// Scenario configuration: a flat, diff-friendly sectioned key/value format.
//
//   # comment
//   [model]              one per file
//   links = 0.2 0.2      values are space-separated
//   [point ee]           named control point
//   [behavior reach]     named behavior
//   [tree dodge]         activation node driving one repeller
//   [obstacle]           optional projectile
//   [run]                integration, outputs, sweep settings
//
// Unknown sections or keys are rejected.  Errors carry the offending key and
// line number.  See emit_defaults() for a complete commented reference.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sim.h"

namespace kdf {

// Parse/validation failure; `what()` is a single line naming the key and the
// line number, e.g. "scen.cfg:14: behaviors[2].lambda_b: must be > 0".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// One behavior as configured, before expansion to per-joint specs.
struct BehaviorConfig {
  std::string name;
  std::string group;           // combination tag: PO, EA, BL, RE, or custom
  BehaviorSpec spec;
  std::string point_name;      // control point for point attractors/repellers
  std::vector<double> target;  // q_g (posture) or x y (point attractor)
  std::vector<int> joints;     // limit classes: one spec per listed joint
};

struct TreeNodeConfig {
  std::string name;
  std::string behavior;  // name of the repeller it drives
  double r_outer = 1.5;
  double r_inner = 0.;
  bool require_closing = true;
};

struct ScenarioConfig {
  // [model]
  std::vector<double> links;
  std::vector<double> masses;
  std::vector<double> lower;
  std::vector<double> upper;
  double gravity = 9.81;
  std::vector<std::string> tracked;  // control-point names for clearance

  // [point NAME]
  std::vector<std::pair<std::string, ControlPoint>> points;

  // [behavior NAME]
  std::vector<BehaviorConfig> behaviors;

  // [tree NAME]
  std::vector<TreeNodeConfig> tree;

  // [obstacle]
  bool has_obstacle = false;
  ObstacleSpec obstacle;
  std::string obstacle_aim;  // control-point name

  // [run]
  RunSettings run;
  std::vector<double> q0;   // empty = zeros
  std::vector<double> dq0;  // empty = zeros
  unsigned seed = 0;
  int starts = 1;
  double start_spread = 0.;  // rad, uniform per-joint perturbation of q0
  int sweep_lo = 1;
  int sweep_hi = 10;
  std::string out_csv = "run.csv";
  std::string out_summary = "summary.json";

  // Expanded scenario ready for rollout().  `groups_off` lists combination
  // tags whose behaviors are dropped (with their tree nodes).
  Scenario build(const std::vector<std::string>& groups_off = {}) const;

  // Names (groups) in registration order after per-joint expansion; aligned
  // with Scenario::behaviors from build({}).
  std::vector<std::string> expanded_groups() const;
};

// Parse and fully validate a config file.  Throws ConfigError.
ScenarioConfig parse_scenario(const std::string& path);

// Same, from an in-memory string; `origin` names the source in errors.
ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin);

// Commented reference config (a minimal 2-link model with one attractor and
// every supported key at its default).  parse_scenario_text() of this string
// reproduces the documented defaults exactly.
std::string emit_defaults();

}  // namespace kdf

#endif  // KDFABRICS_SRC_CONFIG_H_
