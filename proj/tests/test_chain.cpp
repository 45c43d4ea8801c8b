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

#include "chain.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace kdf {
namespace {

ChainModel unit_two_link() {
  return ChainModel({1., 1.}, {1., 1.}, Vec::Constant(2, -3.),
                    Vec::Constant(2, 3.), 9.81);
}

ChainModel random_chain(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> len(0.2, 1.2), mass(0.3, 2.);
  std::vector<double> lengths(n), masses(n);
  for (int i = 0; i < n; ++i) {
    lengths[i] = len(rng);
    masses[i] = mass(rng);
  }
  return ChainModel(lengths, masses, Vec::Constant(n, -3.),
                    Vec::Constant(n, 3.), 9.81);
}

Vec random_q(std::mt19937& rng, int n, double span = 2.5) {
  std::uniform_real_distribution<double> uni(-span, span);
  Vec q(n);
  for (int i = 0; i < n; ++i) q[i] = uni(rng);
  return q;
}

// Hand-computed Lagrangian oracle for the unit two-link chain at q = 0:
// with both point masses at link tips and all lengths/masses 1,
//   D = [[5, 2], [2, 1]].
TEST(ChainModel, MassMatrixUnitTwoLinkOracle) {
  const ChainModel model = unit_two_link();
  Mat expected(2, 2);
  expected << 5., 2., 2., 1.;
  const Mat D = model.mass_matrix(Vec::Zero(2));
  EXPECT_LT((D - expected).cwiseAbs().maxCoeff(), 1e-9);
}

// At q = 0 both links lie along +x, so gravity torque is g * (sum of mass
// moments): (3g, g).
TEST(ChainModel, GravityUnitTwoLinkOracle) {
  const ChainModel model = unit_two_link();
  const Vec G = model.gravity_vector(Vec::Zero(2));
  EXPECT_NEAR(G[0], 3. * 9.81, 1e-9);
  EXPECT_NEAR(G[1], 9.81, 1e-9);
}

TEST(ChainModel, TipPositionsUnitTwoLink) {
  const ChainModel model = unit_two_link();
  const Vec q = Vec::Zero(2);
  EXPECT_NEAR(model.tip(q, 0).x(), 1., 1e-12);
  EXPECT_NEAR(model.tip(q, 1).x(), 2., 1e-12);
  EXPECT_NEAR(model.tip(q, 1).y(), 0., 1e-12);

  Vec q2(2);
  q2 << M_PI / 2., -M_PI / 2.;
  const Vec2 p = model.tip(q2, 1);  // up one, then right one
  EXPECT_NEAR(p.x(), 1., 1e-12);
  EXPECT_NEAR(p.y(), 1., 1e-12);
}

TEST(ChainModel, JacobianMatchesFiniteDifference) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    const ChainModel model = random_chain(rng, n);
    const ControlPoint cp{n - 1, model.length(n - 1) * 0.5};
    const Vec q = random_q(rng, n);
    const Mat J = model.jacobian(q, cp);
    const double h = 1e-6;
    for (int j = 0; j < n; ++j) {
      Vec qp = q, qm = q;
      qp[j] += h;
      qm[j] -= h;
      const Vec2 fd = (model.position(qp, cp) - model.position(qm, cp)) / (2. * h);
      EXPECT_LT((J.col(j) - Vec(fd)).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(ChainModel, JacobianPartialMatchesFiniteDifference) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const ChainModel model = random_chain(rng, n);
    const ControlPoint cp{n - 1, model.length(n - 1)};
    const Vec q = random_q(rng, n);
    const double h = 1e-6;
    for (int m = 0; m < n; ++m) {
      Vec qp = q, qm = q;
      qp[m] += h;
      qm[m] -= h;
      const Mat fd =
          (model.jacobian(qp, cp) - model.jacobian(qm, cp)) / (2. * h);
      const Mat dJ = model.jacobian_partial(q, cp, m);
      EXPECT_LT((dJ - fd).cwiseAbs().maxCoeff(), 1e-5)
          << "n=" << n << " m=" << m;
    }
  }
}

TEST(ChainModel, JacobianDotMatchesAnalyticOneLink) {
  const ChainModel model({1.}, {1.}, Vec::Constant(1, -3.),
                         Vec::Constant(1, 3.), 9.81);
  Vec q(1), dq(1);
  q << 0.7;
  dq << 0.3;
  const ControlPoint cp{0, 1.};
  // J = [-sin q; cos q], so Jdot = [-cos(q) qd; -sin(q) qd].
  const Mat Jd = model.jacobian_dot(q, dq, cp);
  EXPECT_NEAR(Jd(0, 0), -std::cos(0.7) * 0.3, 1e-7);
  EXPECT_NEAR(Jd(1, 0), -std::sin(0.7) * 0.3, 1e-7);
}

TEST(ChainModel, MassMatrixSymmetricPositiveDefinite) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const ChainModel model = random_chain(rng, n);
    const Vec q = random_q(rng, n);
    const Mat D = model.mass_matrix(q);
    EXPECT_LT((D - D.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(D);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.);
  }
}

// Structural property of the Christoffel construction: Ddot - 2C is
// skew-symmetric.  Ddot is approximated by central differences of D along dq.
TEST(ChainModel, CoriolisSkewSymmetry) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const ChainModel model = random_chain(rng, n);
    const Vec q = random_q(rng, n);
    const Vec dq = random_q(rng, n, 1.5);
    const double h = 1e-6;
    const Mat Ddot =
        (model.mass_matrix(q + h * dq) - model.mass_matrix(q - h * dq)) /
        (2. * h);
    const Mat C = model.coriolis_matrix(q, dq);
    const Mat S = Ddot - 2. * C;
    EXPECT_LT((S + S.transpose()).cwiseAbs().maxCoeff(), 1e-6);
  }
}

// Holding still takes exactly the gravity torque: tau = ID(q, 0, 0) = G(q).
TEST(ChainModel, GravityIsHoldingTorque) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const ChainModel model = random_chain(rng, n);
    const Vec q = random_q(rng, n);
    const Vec G = model.gravity_vector(q);
    const Vec tau = model.inverse_dynamics(q, Vec::Zero(n), Vec::Zero(n));
    EXPECT_LT((G - tau).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ChainModel, InverseDynamicsComposition) {
  std::mt19937 rng(53);
  const int n = 4;
  const ChainModel model = random_chain(rng, n);
  const Vec q = random_q(rng, n), dq = random_q(rng, n, 1.),
            ddq = random_q(rng, n, 2.);
  const Vec tau = model.inverse_dynamics(q, dq, ddq);
  const Vec expected = model.mass_matrix(q) * ddq +
                       model.coriolis_matrix(q, dq) * dq +
                       model.gravity_vector(q);
  EXPECT_LT((tau - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ChainModel, ConstructorRejectsBadArguments) {
  EXPECT_THROW(ChainModel({}, {}, Vec(), Vec(), 9.81), std::invalid_argument);
  EXPECT_THROW(ChainModel({1., -1.}, {1., 1.}, Vec::Constant(2, -3.),
                          Vec::Constant(2, 3.), 9.81),
               std::invalid_argument);
  EXPECT_THROW(ChainModel({1.}, {1., 1.}, Vec::Constant(2, -3.),
                          Vec::Constant(2, 3.), 9.81),
               std::invalid_argument);
  EXPECT_THROW(ChainModel({1., 1.}, {1., 1.}, Vec::Constant(2, 3.),
                          Vec::Constant(2, -3.), 9.81),
               std::invalid_argument);
}

TEST(ChainModel, ControlPointValidation) {
  const ChainModel model = unit_two_link();
  EXPECT_NO_THROW(model.validate(ControlPoint{1, 0.5}));
  EXPECT_THROW(model.validate(ControlPoint{2, 0.5}), std::invalid_argument);
  EXPECT_THROW(model.validate(ControlPoint{0, 1.5}), std::invalid_argument);
  EXPECT_THROW(model.validate(ControlPoint{-1, 0.}), std::invalid_argument);
}

}  // namespace
}  // namespace kdf
