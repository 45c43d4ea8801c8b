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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace kdf {
namespace {

ChainModel unit_chain(int n) {
  return ChainModel(std::vector<double>(n, 1.), std::vector<double>(n, 1.),
                    Vec::Constant(n, -6.), Vec::Constant(n, 6.), 9.81);
}

Scenario make_scenario(ChainModel model) {
  Scenario sc{std::move(model)};
  sc.q0 = Vec::Zero(sc.model.dof());
  sc.dq0 = Vec::Zero(sc.model.dof());
  return sc;
}

BehaviorSpec posture_hold(const Vec& target, double lambda_e, double damping) {
  BehaviorSpec b;
  b.cls = BehaviorClass::kAttractor;
  b.posture = true;
  b.target = target;
  b.lambda_e = lambda_e;
  b.damping = damping;
  return b;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream f(path);
  EXPECT_TRUE(f.good()) << path;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line)) lines.push_back(line);
  return lines;
}

// One gated step of a pure posture attractor from rest commands
// ddq = lambda_e (target - q0); semi-implicit Euler then gives
// dq' = ddq dt and q' = dq' dt.
TEST(Rollout, SingleStepIntegratorArithmetic) {
  Scenario sc = make_scenario(unit_chain(2));
  Vec target(2);
  target << 1., 2.;
  sc.behaviors.push_back(posture_hold(target, 1., 0.));
  sc.run.dt = 0.1;
  sc.run.duration = 0.1;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 1u);
  const StepLog& s = r.steps[0];
  EXPECT_NEAR(s.ddq[0], 1., 1e-12);
  EXPECT_NEAR(s.ddq[1], 2., 1e-12);
  EXPECT_NEAR(s.dq[0], 0.1, 1e-13);
  EXPECT_NEAR(s.dq[1], 0.2, 1e-13);
  EXPECT_NEAR(s.q[0], 0.01, 1e-14);
  EXPECT_NEAR(s.q[1], 0.02, 1e-14);
  EXPECT_NEAR(s.t, 0.1, 1e-15);
}

TEST(Rollout, CoastingIsExactlyLinear) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.dq0 << 0.5, -0.25;
  sc.run.dt = 0.125;  // power of two: linear drift is exact in binary
  sc.run.duration = 1.25;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 10u);
  for (size_t k = 0; k < r.steps.size(); ++k) {
    const double steps = static_cast<double>(k + 1);
    EXPECT_EQ(r.steps[k].dq[0], 0.5);
    EXPECT_EQ(r.steps[k].dq[1], -0.25);
    EXPECT_EQ(r.steps[k].q[0], 0.5 * 0.125 * steps);
    EXPECT_EQ(r.steps[k].q[1], -0.25 * 0.125 * steps);
    EXPECT_EQ(r.steps[k].ddq.cwiseAbs().maxCoeff(), 0.);
  }
}

TEST(Rollout, RecordCountIsCeilOfHorizonOverStep) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.run.dt = 0.3;
  sc.run.duration = 1.0;  // 3.33 steps -> 4 records
  EXPECT_EQ(rollout(sc).steps.size(), 4u);
  sc.run.dt = 0.25;
  EXPECT_EQ(rollout(sc).steps.size(), 4u);  // exact division
}

TEST(Rollout, ObstacleFliesStraightAtLaunchAim) {
  Scenario sc = make_scenario(unit_chain(2));
  ObstacleSpec obs;
  obs.start = Vec2(3., 0.);
  obs.radius = 0.02;
  obs.launch_time = 0.;
  obs.speed = 1.;
  obs.aim = ControlPoint{1, 1.};  // tip sits at (2, 0) and never moves
  sc.obstacle = obs;
  sc.run.dt = 0.5;
  sc.run.duration = 2.0;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_DOUBLE_EQ(r.steps[0].obstacle.x(), 2.5);
  EXPECT_DOUBLE_EQ(r.steps[0].obstacle.y(), 0.);
  EXPECT_DOUBLE_EQ(r.steps[1].obstacle.x(), 2.0);
  EXPECT_DOUBLE_EQ(r.steps[1].min_dist, 0.);
  EXPECT_DOUBLE_EQ(r.steps[3].obstacle.x(), 1.0);
  EXPECT_DOUBLE_EQ(r.steps[3].min_dist, 1.0);
  EXPECT_DOUBLE_EQ(r.min_obstacle_dist, 0.);
}

// With the ballistic flag the projectile's vertical velocity accumulates
// -g dt per step (velocity before position), i.e. a discrete parabola:
//   y_k = -g dt^2 k (k+1) / 2.
TEST(Rollout, BallisticObstacleFallsParabolically) {
  Scenario sc = make_scenario(unit_chain(2));
  ObstacleSpec obs;
  obs.start = Vec2(3., 0.);
  obs.launch_time = 0.;
  obs.speed = 1.;
  obs.aim = ControlPoint{1, 1.};
  obs.ballistic = true;
  sc.obstacle = obs;
  sc.run.dt = 0.5;
  sc.run.duration = 2.0;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 4u);
  const double g = sc.model.gravity();
  for (size_t k = 0; k < r.steps.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    EXPECT_NEAR(r.steps[k].obstacle.x(), 3. - 0.5 * n, 1e-12);
    EXPECT_NEAR(r.steps[k].obstacle.y(), -g * 0.25 * n * (n + 1.) / 2., 1e-9);
  }
}

TEST(Rollout, LaunchAimsAtCurrentAimPointNotInitial) {
  Scenario sc = make_scenario(unit_chain(1));
  sc.dq0 << 0.5;  // coasting rotation, no behaviors
  ObstacleSpec obs;
  obs.start = Vec2(3., 0.);
  obs.launch_time = 0.2;
  obs.speed = 1.;
  obs.aim = ControlPoint{0, 1.};
  sc.obstacle = obs;
  sc.run.dt = 0.1;
  sc.run.duration = 0.5;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 5u);
  // Launch happens at t = 0.2 when q = 0.1, so the velocity points at the
  // tip of the rotated link, not at the initial tip (1, 0).
  const Vec2 aim(std::cos(0.1), std::sin(0.1));
  const Vec2 vel = (aim - Vec2(3., 0.)).normalized();
  EXPECT_NEAR(r.steps[2].obstacle.x(), 3. + 0.1 * vel.x(), 1e-12);
  EXPECT_NEAR(r.steps[2].obstacle.y(), 0.1 * vel.y(), 1e-12);
  // Pre-launch the obstacle has not moved.
  EXPECT_DOUBLE_EQ(r.steps[0].obstacle.x(), 3.);
  EXPECT_DOUBLE_EQ(r.steps[1].obstacle.x(), 3.);
}

TEST(Rollout, SummaryMinDistCountsOnlyFlightPhase) {
  Scenario sc = make_scenario(unit_chain(1));
  sc.dq0 << 2.;  // the tip runs away faster than the projectile flies
  ObstacleSpec obs;
  obs.start = Vec2(1.05, 0.);  // grazes the initial tip position (1, 0)
  obs.launch_time = 0.2;
  obs.speed = 1.;
  obs.aim = ControlPoint{0, 1.};
  sc.obstacle = obs;
  sc.run.dt = 0.1;
  sc.run.duration = 0.5;

  const RolloutResult r = rollout(sc);
  // Before launch the tip passes within ~0.21 of the resting obstacle; those
  // steps must not enter the summary, which only sees the flight phase
  // (clearance ~0.5 and growing).
  EXPECT_LT(r.steps[0].min_dist, 0.3);
  EXPECT_GT(r.min_obstacle_dist, 0.3);
}

TEST(Rollout, DivergenceAbortsAfterLoggingTheStep) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.dq0 << 2., 0.;
  sc.run.dt = 0.1;
  sc.run.duration = 1.0;
  sc.run.divergence_speed = 1.0;

  const RolloutResult r = rollout(sc);
  EXPECT_TRUE(r.diverged);
  ASSERT_EQ(r.steps.size(), 1u);  // the offending step is still logged
  EXPECT_NEAR(r.divergence_time, 0.1, 1e-15);
}

TEST(Rollout, LimitExcursionIsTracked) {
  ChainModel model({1.}, {1.}, Vec::Constant(1, -1.), Vec::Constant(1, 0.5),
                   9.81);
  Scenario sc = make_scenario(std::move(model));
  sc.q0 << 0.4;
  sc.dq0 << 1.;
  sc.run.dt = 0.1;
  sc.run.duration = 0.3;

  const RolloutResult r = rollout(sc);
  ASSERT_EQ(r.steps.size(), 3u);
  EXPECT_FALSE(r.steps[0].violation);  // q = 0.5: at the limit, not beyond
  EXPECT_TRUE(r.steps[1].violation);   // q = 0.6
  EXPECT_TRUE(r.steps[2].violation);   // q = 0.7
  EXPECT_NEAR(r.max_limit_violation, 0.2, 1e-12);
}

TEST(Rollout, AtGoalStrictScenarioStaysPut) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.q0 << 0.3, -0.2;
  sc.behaviors.push_back(posture_hold(sc.q0, 10., 10.));
  sc.run.mode = PolicyMode::kStrict;
  sc.run.dt = 0.01;
  sc.run.duration = 0.5;

  const RolloutResult r = rollout(sc);
  EXPECT_FALSE(r.diverged);
  EXPECT_EQ(r.final_tracking_error, 0.);
  EXPECT_EQ(r.max_limit_violation, 0.);
  for (const StepLog& s : r.steps)
    EXPECT_EQ(s.ddq.cwiseAbs().maxCoeff(), 0.);
}

TEST(Rollout, RejectsBadInitialStateAndTiming) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.q0 = Vec::Zero(3);
  EXPECT_THROW(rollout(sc), std::invalid_argument);
  sc.q0 = Vec::Zero(2);
  sc.run.dt = 0.;
  EXPECT_THROW(rollout(sc), std::invalid_argument);
}

TEST(Rollout, StateTrajectoriesAreBitIdenticalAcrossRuns) {
  auto build = [] {
    Scenario sc = make_scenario(unit_chain(3));
    sc.q0 << 0.5, -0.3, 0.2;
    Vec target(3);
    target << -0.2, 0.4, 0.1;
    sc.behaviors.push_back(posture_hold(target, 10., 10.));
    sc.run.dt = 0.01;
    sc.run.duration = 0.2;
    return sc;
  };
  Scenario a = build();
  Scenario b = build();
  const RolloutResult ra = rollout(a);
  const RolloutResult rb = rollout(b);
  ASSERT_EQ(ra.steps.size(), rb.steps.size());
  for (size_t k = 0; k < ra.steps.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(ra.steps[k].q[i], rb.steps[k].q[i]);
      EXPECT_EQ(ra.steps[k].dq[i], rb.steps[k].dq[i]);
      EXPECT_EQ(ra.steps[k].ddq[i], rb.steps[k].ddq[i]);
      EXPECT_EQ(ra.steps[k].tau[i], rb.steps[k].tau[i]);
    }
  }
}

TEST(WriteCsv, SchemaAndDeterminismExceptTiming) {
  auto run_once = [](const std::string& path) {
    Scenario sc = make_scenario(unit_chain(2));
    sc.q0 << 0.3, -0.1;
    sc.behaviors.push_back(posture_hold(Vec::Zero(2), 10., 10.));
    ObstacleSpec obs;
    obs.start = Vec2(3., 0.);
    obs.launch_time = 0.;
    obs.speed = 1.;
    obs.aim = ControlPoint{1, 1.};
    sc.obstacle = obs;
    sc.run.dt = 0.01;
    sc.run.duration = 0.05;
    const RolloutResult r = rollout(sc);
    write_csv(path, sc.model, r);
  };
  const std::string path_a = testing::TempDir() + "kdf_sim_a.csv";
  const std::string path_b = testing::TempDir() + "kdf_sim_b.csv";
  run_once(path_a);
  run_once(path_b);

  const auto lines_a = read_lines(path_a);
  const auto lines_b = read_lines(path_b);
  ASSERT_EQ(lines_a.size(), 6u);  // header + 5 records
  ASSERT_EQ(lines_b.size(), 6u);
  EXPECT_EQ(lines_a[0],
            "t,q0,q1,dq0,dq1,ee_x,ee_y,obs_x,obs_y,min_dist,iter_us,viol");

  const auto header = split_csv(lines_a[0]);
  size_t iter_col = 0;
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == "iter_us") iter_col = i;
  ASSERT_GT(iter_col, 0u);

  for (size_t k = 1; k < lines_a.size(); ++k) {
    const auto fa = split_csv(lines_a[k]);
    const auto fb = split_csv(lines_b[k]);
    ASSERT_EQ(fa.size(), header.size());
    ASSERT_EQ(fb.size(), header.size());
    for (size_t i = 0; i < fa.size(); ++i) {
      if (i == iter_col) continue;  // wall time legitimately differs
      EXPECT_EQ(fa[i], fb[i]) << "line " << k << " column " << header[i];
    }
  }
  // First record starts one step in.
  EXPECT_EQ(split_csv(lines_a[1])[0], "0.01");
}

TEST(WriteCsv, ThrowsOnUnwritablePath) {
  RolloutResult r;
  EXPECT_THROW(write_csv("/nonexistent-dir/out.csv", unit_chain(2), r),
               std::runtime_error);
}

TEST(Benchmark, SummarizesIterationTimes) {
  Scenario sc = make_scenario(unit_chain(2));
  sc.behaviors.push_back(posture_hold(Vec::Zero(2), 10., 10.));
  sc.q0 << 0.5, -0.5;
  const TimingSummary s = benchmark(sc, 200);
  EXPECT_EQ(s.samples, 180);  // first 10% discarded as warm-up
  EXPECT_GT(s.mean_ms, 0.);
  EXPECT_GT(s.median_ms, 0.);
  EXPECT_GE(s.p99_ms, s.median_ms);
  EXPECT_LT(s.median_ms, 5.);  // a 2-joint iteration is far below criterion
}

TEST(Benchmark, RejectsTooFewIterations) {
  Scenario sc = make_scenario(unit_chain(2));
  EXPECT_THROW(benchmark(sc, 99), std::invalid_argument);
}

}  // namespace
}  // namespace kdf
