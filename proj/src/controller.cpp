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

#include "controller.h"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace kdf {
namespace {

constexpr double kJStarDotStep = 1e-6;

// Prioritized Jacobians for the active behaviors at configuration qp.
// `order` holds indices into `behaviors` sorted by (priority, registration).
std::vector<Mat> stack_at(const ChainModel& model,
                          const std::vector<BehaviorSpec>& behaviors,
                          const std::vector<int>& order, const Vec& qp) {
  const Mat D = model.mass_matrix(qp);
  std::vector<StackEntry> stack;
  stack.reserve(order.size());
  const Mat S = Mat::Identity(model.dof(), model.dof());
  for (int idx : order) {
    StackEntry e;
    e.J = task_map(behaviors[idx], model, qp).J;
    e.selection = S;
    e.priority = behaviors[idx].priority;
    stack.push_back(std::move(e));
  }
  return prioritized_jacobians(stack, D);
}

}  // namespace

void tree_tick(const BehaviorTree& tree, const ChainModel& model, const Vec& q,
               const WorldState& world, std::vector<BehaviorSpec>& behaviors) {
  for (const DodgeNode& node : tree.dodge) {
    if (node.behavior < 0 ||
        node.behavior >= static_cast<int>(behaviors.size()))
      throw std::invalid_argument("tree_tick: dangling edge to unregistered behavior");
    BehaviorSpec& spec = behaviors[node.behavior];
    if (spec.cls != BehaviorClass::kRepeller)
      throw std::invalid_argument("tree_tick: dodge node must drive a repeller");
    spec.obstacle = world.obstacle_pos;
    if (!world.launched) {
      spec.active = false;
      continue;
    }
    const Vec2 rel = world.obstacle_pos - model.position(q, spec.point);
    const double dist = rel.norm();
    const bool in_band = dist >= node.r_inner && dist <= node.r_outer;
    const bool closing = world.obstacle_vel.dot(rel) < 0.;
    spec.active = in_band && (closing || !node.require_closing);
  }
}

ControlResult control_step(const ChainModel& model, const Vec& q, const Vec& dq,
                           const BehaviorTree& tree,
                           std::vector<BehaviorSpec>& behaviors,
                           const WorldState& world, double t,
                           PolicyMode mode, double eps_gate) {
  (void)t;  // activation logic is driven by world state, not wall-clock time
  tree_tick(tree, model, q, world, behaviors);

  const auto t0 = std::chrono::steady_clock::now();

  // Registration-ordered list of active behaviors, then a stable sort by
  // priority so equal-priority behaviors keep registration order.
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(behaviors.size()); ++i)
    if (behaviors[i].active) order.push_back(i);

  ControlResult out;
  out.resolution.x.resize(behaviors.size());
  out.resolution.dx.resize(behaviors.size());
  out.resolution.pi.resize(behaviors.size());
  out.resolution.metric_norm.assign(behaviors.size(), 0.);

  if (order.empty()) {
    out.resolution.ddq = Vec::Zero(model.dof());
    out.tau = model.inverse_dynamics(q, dq, out.resolution.ddq);
    out.resolution.iter_us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return behaviors[a].priority < behaviors[b].priority;
  });

  const std::vector<Mat> j_star = stack_at(model, behaviors, order, q);

  // Jdot* by directional finite differences of the entire prioritized
  // pipeline (task Jacobians, mass matrix, and nullspace projections all move
  // with q).
  const double h = kJStarDotStep;
  const std::vector<Mat> j_plus = stack_at(model, behaviors, order, q + h * dq);
  const std::vector<Mat> j_minus = stack_at(model, behaviors, order, q - h * dq);

  std::vector<BehaviorEval> evals(order.size());
  for (size_t k = 0; k < order.size(); ++k) {
    const int idx = order[k];
    const BehaviorSpec& spec = behaviors[idx];
    const TaskMapEval task = task_map(spec, model, q);
    const Vec dx = j_star[k] * dq;
    const FabricTerms fab = fabric_terms(spec, task, dx);
    out.any_clamped = out.any_clamped || fab.clamped;

    BehaviorEval& e = evals[k];
    e.metric = fab.metric;
    e.pi = policy(fab.grad_psi, dx, spec.damping, mode, eps_gate);
    e.J_star = j_star[k];
    e.J_star_dot = (j_plus[k] - j_minus[k]) / (2. * h);

    out.resolution.x[idx] = task.x;
    out.resolution.dx[idx] = dx;
    out.resolution.pi[idx] = e.pi;
    out.resolution.metric_norm[idx] = e.metric.norm();
  }

  ResolutionResult res = resolve(evals, dq);
  out.resolution.ddq = std::move(res.ddq);
  out.resolution.pullback_rank = res.pullback_rank;
  out.tau = model.inverse_dynamics(q, dq, out.resolution.ddq);
  out.resolution.iter_us =
      std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace kdf
