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

#ifndef KDFABRICS_SRC_FABRICS_H_
#define KDFABRICS_SRC_FABRICS_H_

// Primitive motion behaviors and the acceleration policy they share.
//
// Each behavior is a task map x = phi(q) together with a potential psi(x), a
// priority metric M(x, xd), a damping gain B, and a priority rank rho.  The
// task-space acceleration command is
//
//   pi(x, xd) = -||xd||^2 * grad_psi(x) - B * xd            (strict mode)
//
// which is homogeneous of degree 2 in xd; gated mode floors the speed factor
// at eps_gate so behaviors can act from rest.  Position-level quantities
// (x, J) and velocity-level quantities (M, pi) are evaluated in two stages
// because the task velocity is defined through the *prioritized* Jacobian,
// which is only available after the nullspace stack is built.

#include <functional>

#include "chain.h"

namespace kdf {

// ---------------------------------------------------------------------------
// Acceleration policy.

enum class PolicyMode {
  kStrict,  // literal degree-2 form: zero at rest
  kGated,   // speed factor floored at eps_gate so behaviors act from rest
};

constexpr double kDefaultEpsGate = 1.0;

// pi = -gate * grad_psi - damping * dx, with gate = ||dx||^2 in strict mode
// and max(||dx||^2, eps_gate) in gated mode.  Throws on negative damping or
// dimension mismatch.
Vec policy(const Vec& grad_psi, const Vec& dx, double damping, PolicyMode mode,
           double eps_gate = kDefaultEpsGate);

// Max relative error between an analytic gradient and central finite
// differences of psi at x (h = 1e-6).  Relative to max(|grad_fd|, 1).
double check_gradient(const std::function<double(const Vec&)>& psi,
                      const std::function<Vec(const Vec&)>& grad, const Vec& x);

// ---------------------------------------------------------------------------
// Behavior specifications.

enum class BehaviorClass {
  kAttractor,   // drive a task coordinate toward a target value
  kRepeller,    // push a control point away from an obstacle
  kLimitUpper,  // keep one joint below its upper limit
  kLimitLower,  // keep one joint above its lower limit
};

// Barrier evaluation floors: below these the barrier is evaluated at the
// floor (keeping accelerations finite after a violation) and the evaluation
// is flagged.
constexpr double kRepellerClampX = 1e-6;  // squared metres
constexpr double kLimitClampX = 1e-4;     // radians

struct BehaviorSpec {
  BehaviorClass cls = BehaviorClass::kAttractor;
  int priority = 2;       // rho >= 1; 1 is the highest rank
  double weight = 1.0;    // W > 0, scales the priority metric
  double damping = 10.0;  // B >= 0
  bool active = true;     // refreshed by the activation tree each tick

  // Attractor: either a whole-configuration (posture) attractor with an
  // n-dimensional target, or a control-point attractor with a 2-D target.
  double lambda_e = 10.0;
  bool posture = false;
  ControlPoint point;
  Vec target;

  // Repeller: scalar task x = ||point(q) - obstacle||^2, barrier active on
  // (0, d_max).  d_max is in squared metres.
  double lambda_b = 1.0;
  double lambda_om = 1.0;
  double d_max = 1.0;
  Vec2 obstacle = Vec2::Zero();

  // Limit: scalar task x = upper - q_j or q_j - lower for one joint.
  int joint = 0;
  double lambda_l = 0.25;
  double lambda_lm = 0.25;

  // Throws std::invalid_argument on any violated invariant (rho < 1, W <= 0,
  // non-positive gains, bad attachment, target dimension mismatch).
  void validate(const ChainModel& model) const;
};

// Position-level evaluation of a behavior's task map.
struct TaskMapEval {
  Vec x;   // task coordinate
  Mat J;   // raw task Jacobian, dim x n
  int dim = 0;
};

// Velocity-level fabric quantities for one behavior.
struct FabricTerms {
  double psi = 0.;  // potential value (logging and tests)
  Vec grad_psi;     // d psi / d x
  Mat metric;       // priority metric M, dim x dim, PSD
  bool clamped = false;  // barrier was evaluated at its floor
};

// Task map (x, J) at configuration q.  Throws if the spec fails validate().
TaskMapEval task_map(const BehaviorSpec& spec, const ChainModel& model,
                     const Vec& q);

// Potential, gradient, and metric given the task value and task velocity
// dx = J* qd.  Switching behaviors (repeller, limit) return an exactly zero
// metric when s(xd) = 0, i.e. when the coordinate moves away from the hazard.
FabricTerms fabric_terms(const BehaviorSpec& spec, const TaskMapEval& task,
                         const Vec& dx);

}  // namespace kdf

#endif  // KDFABRICS_SRC_FABRICS_H_
