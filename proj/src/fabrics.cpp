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

#include "fabrics.h"

#include <cmath>

namespace kdf {

Vec policy(const Vec& grad_psi, const Vec& dx, double damping, PolicyMode mode,
           double eps_gate) {
  if (damping < 0.) throw std::invalid_argument("policy: negative damping");
  if (grad_psi.size() != dx.size())
    throw std::invalid_argument("policy: gradient/velocity dimension mismatch");
  double gate = dx.squaredNorm();
  if (mode == PolicyMode::kGated) gate = std::max(gate, eps_gate);
  return -gate * grad_psi - damping * dx;
}

double check_gradient(const std::function<double(const Vec&)>& psi,
                      const std::function<Vec(const Vec&)>& grad, const Vec& x) {
  const double h = 1e-6;
  const Vec g = grad(x);
  double worst = 0.;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fd = (psi(xp) - psi(xm)) / (2. * h);
    const double err = std::abs(g[i] - fd) / std::max(std::abs(fd), 1.);
    worst = std::max(worst, err);
  }
  return worst;
}

void BehaviorSpec::validate(const ChainModel& model) const {
  if (priority < 1) throw std::invalid_argument("behavior: priority must be >= 1");
  if (weight <= 0.) throw std::invalid_argument("behavior: weight must be > 0");
  if (damping < 0.) throw std::invalid_argument("behavior: damping must be >= 0");
  switch (cls) {
    case BehaviorClass::kAttractor:
      if (lambda_e <= 0.) throw std::invalid_argument("behavior: lambda_e must be > 0");
      if (posture) {
        if (target.size() != model.dof())
          throw std::invalid_argument("behavior: posture target dimension mismatch");
      } else {
        model.validate(point);
        if (target.size() != 2)
          throw std::invalid_argument("behavior: point target must be 2-D");
      }
      break;
    case BehaviorClass::kRepeller:
      if (lambda_b <= 0. || lambda_om <= 0.)
        throw std::invalid_argument("behavior: repeller gains must be > 0");
      if (d_max <= 0.) throw std::invalid_argument("behavior: d_max must be > 0");
      if (!obstacle.allFinite())
        throw std::invalid_argument("behavior: obstacle position must be finite");
      model.validate(point);
      break;
    case BehaviorClass::kLimitUpper:
    case BehaviorClass::kLimitLower:
      if (lambda_l <= 0. || lambda_lm <= 0.)
        throw std::invalid_argument("behavior: limit gains must be > 0");
      if (joint < 0 || joint >= model.dof())
        throw std::invalid_argument("behavior: joint index out of range");
      break;
  }
}

namespace {

// s(xd) for the switching behaviors: engage only while the scalar coordinate
// shrinks (repeller: approaching the obstacle; limit: approaching the bound).
double switch_on(const Vec& dx) { return dx[0] < 0. ? 1. : 0.; }

TaskMapEval attractor_task(const BehaviorSpec& spec, const ChainModel& model,
                           const Vec& q) {
  TaskMapEval t;
  if (spec.posture) {
    t.dim = model.dof();
    t.x = spec.target - q;
    t.J = -Mat::Identity(model.dof(), model.dof());
  } else {
    t.dim = 2;
    t.x = spec.target - Vec(model.position(q, spec.point));
    t.J = -model.jacobian(q, spec.point);
  }
  return t;
}

TaskMapEval repeller_task(const BehaviorSpec& spec, const ChainModel& model,
                          const Vec& q) {
  TaskMapEval t;
  t.dim = 1;
  const Vec2 p = model.position(q, spec.point);
  const Vec2 rel = p - spec.obstacle;
  t.x = Vec::Constant(1, rel.squaredNorm());
  // d/dq ||p - X_o||^2 = 2 (p - X_o)^T dp/dq
  t.J = 2. * rel.transpose() * model.jacobian(q, spec.point);
  return t;
}

TaskMapEval limit_task(const BehaviorSpec& spec, const ChainModel& model,
                       const Vec& q) {
  TaskMapEval t;
  t.dim = 1;
  t.J = Mat::Zero(1, model.dof());
  if (spec.cls == BehaviorClass::kLimitUpper) {
    t.x = Vec::Constant(1, model.upper()[spec.joint] - q[spec.joint]);
    t.J(0, spec.joint) = -1.;
  } else {
    t.x = Vec::Constant(1, q[spec.joint] - model.lower()[spec.joint]);
    t.J(0, spec.joint) = 1.;
  }
  return t;
}

FabricTerms attractor_fabric(const BehaviorSpec& spec, const TaskMapEval& task) {
  FabricTerms f;
  f.psi = 0.5 * spec.lambda_e * task.x.squaredNorm();
  f.grad_psi = spec.lambda_e * task.x;
  f.metric = spec.weight * Mat::Identity(task.dim, task.dim);
  return f;
}

FabricTerms repeller_fabric(const BehaviorSpec& spec, const TaskMapEval& task,
                            const Vec& dx) {
  FabricTerms f;
  const double x_raw = task.x[0];
  f.clamped = x_raw < kRepellerClampX;
  const double x = std::max(x_raw, kRepellerClampX);
  if (x < spec.d_max) {
    const double d2 = spec.d_max * spec.d_max;
    f.psi = 0.5 * spec.lambda_b * (spec.d_max - x) / (d2 * x * x);
    f.grad_psi = Vec::Constant(
        1, spec.lambda_b / (2. * d2) * (x - 2. * spec.d_max) / (x * x * x));
  } else {
    f.psi = 0.;
    f.grad_psi = Vec::Zero(1);
  }
  f.metric = Mat::Constant(1, 1, spec.weight * switch_on(dx) * spec.lambda_om / x);
  return f;
}

FabricTerms limit_fabric(const BehaviorSpec& spec, const TaskMapEval& task,
                         const Vec& dx) {
  FabricTerms f;
  const double x_raw = task.x[0];
  f.clamped = x_raw < kLimitClampX;
  const double x = std::max(x_raw, kLimitClampX);
  f.psi = spec.lambda_l / (x * x);
  f.grad_psi = Vec::Constant(1, -2. * spec.lambda_l / (x * x * x));
  f.metric =
      Mat::Constant(1, 1, spec.weight * switch_on(dx) * spec.lambda_lm / (x * x));
  return f;
}

}  // namespace

TaskMapEval task_map(const BehaviorSpec& spec, const ChainModel& model,
                     const Vec& q) {
  spec.validate(model);
  switch (spec.cls) {
    case BehaviorClass::kAttractor:
      return attractor_task(spec, model, q);
    case BehaviorClass::kRepeller:
      return repeller_task(spec, model, q);
    case BehaviorClass::kLimitUpper:
    case BehaviorClass::kLimitLower:
      return limit_task(spec, model, q);
  }
  throw std::logic_error("task_map: unreachable");
}

FabricTerms fabric_terms(const BehaviorSpec& spec, const TaskMapEval& task,
                         const Vec& dx) {
  if (dx.size() != task.dim)
    throw std::invalid_argument("fabric_terms: task velocity dimension mismatch");
  switch (spec.cls) {
    case BehaviorClass::kAttractor:
      return attractor_fabric(spec, task);
    case BehaviorClass::kRepeller:
      return repeller_fabric(spec, task, dx);
    case BehaviorClass::kLimitUpper:
    case BehaviorClass::kLimitLower:
      return limit_fabric(spec, task, dx);
  }
  throw std::logic_error("fabric_terms: unreachable");
}

}  // namespace kdf
