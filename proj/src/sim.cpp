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

#include "sim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace kdf {
namespace {

ControlPoint end_effector(const ChainModel& model) {
  const int last = model.dof() - 1;
  return ControlPoint{last, model.length(last)};
}

double limit_excursion(const ChainModel& model, const Vec& q) {
  double worst = 0.;
  for (int i = 0; i < model.dof(); ++i) {
    worst = std::max(worst, q[i] - model.upper()[i]);
    worst = std::max(worst, model.lower()[i] - q[i]);
  }
  return std::max(worst, 0.);
}

double tracking_error(const ChainModel& model, const Vec& q,
                      const std::vector<BehaviorSpec>& behaviors) {
  for (const BehaviorSpec& b : behaviors) {
    if (b.cls != BehaviorClass::kAttractor) continue;
    if (b.posture) {
      const ControlPoint ee = end_effector(model);
      return (model.position(Vec(b.target), ee) - model.position(q, ee)).norm();
    }
    return (Vec2(b.target) - model.position(q, b.point)).norm();
  }
  return 0.;
}

}  // namespace

RolloutResult rollout(Scenario& sc) {
  const int n = sc.model.dof();
  if (sc.q0.size() != n || sc.dq0.size() != n)
    throw std::invalid_argument("rollout: initial state dimension mismatch");
  for (const BehaviorSpec& b : sc.behaviors) b.validate(sc.model);
  if (sc.run.dt <= 0. || sc.run.duration <= 0.)
    throw std::invalid_argument("rollout: dt and duration must be positive");

  std::vector<ControlPoint> tracked = sc.tracked_points;
  if (tracked.empty()) tracked.push_back(end_effector(sc.model));
  for (const ControlPoint& cp : tracked) sc.model.validate(cp);

  RolloutResult out;
  const int steps = static_cast<int>(std::ceil(sc.run.duration / sc.run.dt));
  out.steps.reserve(steps);

  Vec q = sc.q0;
  Vec dq = sc.dq0;
  WorldState world;
  world.obstacle_pos = sc.obstacle ? sc.obstacle->start : Vec2::Constant(1e9);

  for (int k = 0; k < steps; ++k) {
    const double t = k * sc.run.dt;
    world.t = t;
    if (sc.obstacle && !world.launched && t >= sc.obstacle->launch_time) {
      const Vec2 aim = sc.model.position(q, sc.obstacle->aim);
      Vec2 dir = aim - world.obstacle_pos;
      const double dist = dir.norm();
      if (dist <= 0.)
        throw std::invalid_argument("rollout: obstacle starts on its aim point");
      world.obstacle_vel = sc.obstacle->speed * dir / dist;
      world.launched = true;
    }

    const ControlResult ctrl =
        control_step(sc.model, q, dq, sc.tree, sc.behaviors, world, t,
                     sc.run.mode, sc.run.eps_gate);

    // Semi-implicit Euler: velocity first, then position with the new
    // velocity.  Commanded accelerations are tracked perfectly.
    dq += ctrl.resolution.ddq * sc.run.dt;
    q += dq * sc.run.dt;
    if (sc.obstacle) {
      if (sc.obstacle->ballistic && world.launched)
        world.obstacle_vel.y() -= sc.model.gravity() * sc.run.dt;
      world.obstacle_pos += world.obstacle_vel * sc.run.dt;
    }

    StepLog log;
    log.t = t + sc.run.dt;
    log.q = q;
    log.dq = dq;
    log.ddq = ctrl.resolution.ddq;
    log.tau = ctrl.tau;
    log.ee = sc.model.position(q, end_effector(sc.model));
    log.obstacle = world.obstacle_pos;
    log.iter_us = ctrl.resolution.iter_us;
    double dist = std::numeric_limits<double>::infinity();
    if (sc.obstacle)
      for (const ControlPoint& cp : tracked)
        dist = std::min(dist,
                        (world.obstacle_pos - Vec2(sc.model.position(q, cp))).norm());
    log.min_dist = dist;
    const double excursion = limit_excursion(sc.model, q);
    log.violation = excursion > 0.;
    out.steps.push_back(std::move(log));

    out.max_limit_violation = std::max(out.max_limit_violation, excursion);
    if (sc.obstacle && world.launched)
      out.min_obstacle_dist = std::min(out.min_obstacle_dist, dist);

    if (dq.cwiseAbs().maxCoeff() > sc.run.divergence_speed) {
      out.diverged = true;
      out.divergence_time = log.t;
      break;
    }
  }

  // Summary statistics over iteration wall times.
  if (!out.steps.empty()) {
    std::vector<double> times;
    times.reserve(out.steps.size());
    double sum = 0.;
    for (const StepLog& s : out.steps) {
      times.push_back(s.iter_us);
      sum += s.iter_us;
    }
    out.mean_iter_us = sum / times.size();
    double var = 0.;
    for (double v : times) var += (v - out.mean_iter_us) * (v - out.mean_iter_us);
    out.std_iter_us = std::sqrt(var / times.size());
    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
    out.median_iter_us = times[times.size() / 2];
  }
  out.final_tracking_error = tracking_error(sc.model, q, sc.behaviors);
  return out;
}

TimingSummary benchmark(Scenario& scenario, int iterations) {
  if (iterations < 100)
    throw std::invalid_argument("benchmark: at least 100 iterations required");
  Scenario sc = scenario;
  sc.run.duration = iterations * sc.run.dt;
  const RolloutResult r = rollout(sc);
  const size_t warmup = r.steps.size() / 10;
  std::vector<double> ms;
  ms.reserve(r.steps.size() - warmup);
  for (size_t i = warmup; i < r.steps.size(); ++i)
    ms.push_back(r.steps[i].iter_us / 1000.);
  TimingSummary s;
  s.samples = static_cast<int>(ms.size());
  if (ms.empty()) return s;
  double sum = 0.;
  for (double v : ms) sum += v;
  s.mean_ms = sum / ms.size();
  double var = 0.;
  for (double v : ms) var += (v - s.mean_ms) * (v - s.mean_ms);
  s.std_ms = std::sqrt(var / ms.size());
  std::sort(ms.begin(), ms.end());
  s.median_ms = ms[ms.size() / 2];
  s.p99_ms = ms[std::min(ms.size() - 1, static_cast<size_t>(ms.size() * 0.99))];
  return s;
}

void write_csv(const std::string& path, const ChainModel& model,
               const RolloutResult& result) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  const int n = model.dof();
  f << "t";
  for (int i = 0; i < n; ++i) f << ",q" << i;
  for (int i = 0; i < n; ++i) f << ",dq" << i;
  f << ",ee_x,ee_y,obs_x,obs_y,min_dist,iter_us,viol\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    f << ',' << buf;
  };
  for (const StepLog& s : result.steps) {
    std::snprintf(buf, sizeof(buf), "%.12g", s.t);
    f << buf;
    for (int i = 0; i < n; ++i) num(s.q[i]);
    for (int i = 0; i < n; ++i) num(s.dq[i]);
    num(s.ee.x());
    num(s.ee.y());
    num(s.obstacle.x());
    num(s.obstacle.y());
    num(s.min_dist);
    num(s.iter_us);
    f << ',' << (s.violation ? 1 : 0) << '\n';
  }
  if (!f.good()) throw std::runtime_error("write_csv: write failure on " + path);
}

}  // namespace kdf
