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

#ifndef KDFABRICS_SRC_CONTROLLER_H_
#define KDFABRICS_SRC_CONTROLLER_H_

// One control iteration: tick the activation tree, evaluate the active
// behaviors, build the prioritized Jacobian stack, resolve to a joint
// acceleration, and map it to torques through inverse dynamics.  The wall
// time of everything after the tree tick is recorded for benchmarking.

#include <vector>

#include "chain.h"
#include "fabrics.h"
#include "prioritize.h"
#include "resolve.h"

namespace kdf {

// Scenario state visible to the activation tree.
struct WorldState {
  double t = 0.;
  bool launched = false;        // obstacle in flight
  Vec2 obstacle_pos = Vec2::Constant(1e9);
  Vec2 obstacle_vel = Vec2::Zero();
};

// High-level dodge node: activates one repeller behavior while the obstacle
// is inside [r_inner, r_outer] of the behavior's control point and closing
// in on it.  r_inner is the contact-imminent radius below which dodging
// yields to the remaining behaviors (bracing); r_inner = 0 disables it.
struct DodgeNode {
  int behavior = 0;    // index into the behavior list; must be a repeller
  double r_outer = 1.5;
  double r_inner = 0.;
  bool require_closing = true;
};

// Scenario-defined activation logic.  An empty tree leaves every behavior's
// static flags and targets untouched.
struct BehaviorTree {
  std::vector<DodgeNode> dodge;
};

// Refresh activation flags and obstacle set-points from the world state.
// Deterministic: identical (tree, world, q, t) produce identical flags.
// Throws if a node references a behavior that is out of range or not a
// repeller.
void tree_tick(const BehaviorTree& tree, const ChainModel& model, const Vec& q,
               const WorldState& world, std::vector<BehaviorSpec>& behaviors);

struct ControlResult {
  ResolutionResult resolution;
  Vec tau;                  // inverse-dynamics torques for resolved ddq
  bool any_clamped = false; // some barrier evaluated at its floor
};

// Run one full control iteration at state (q, dq) and time t.  `behaviors`
// activation flags and obstacle targets are refreshed in place via
// tree_tick.  With no active behavior the commanded acceleration is zero
// (resolve itself rejects empty input; the controller treats "nothing to do"
// as coasting).  Diagnostics vectors in the result are indexed like
// `behaviors`; inactive entries are left empty.
ControlResult control_step(const ChainModel& model, const Vec& q, const Vec& dq,
                           const BehaviorTree& tree,
                           std::vector<BehaviorSpec>& behaviors,
                           const WorldState& world, double t,
                           PolicyMode mode = PolicyMode::kGated,
                           double eps_gate = kDefaultEpsGate);

}  // namespace kdf

#endif  // KDFABRICS_SRC_CONTROLLER_H_
