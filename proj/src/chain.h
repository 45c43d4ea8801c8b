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

#ifndef KDFABRICS_SRC_CHAIN_H_
#define KDFABRICS_SRC_CHAIN_H_

// Rigid-body model of a fully actuated planar serial chain with revolute
// joints and point masses at the link tips.  Provides forward kinematics,
// point Jacobians (analytic, with analytic configuration derivatives),
// joint-space dynamics D(q)qdd + C(q,qd)qd + G(q) = tau, and the standard
// inverse-dynamics map used to turn commanded accelerations into torques.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kdf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;

// A point rigidly attached to one link, `offset` metres from that link's
// proximal joint along the link axis.  Task maps and obstacle distances are
// all expressed through control points.
struct ControlPoint {
  int link = 0;        // 0-based link index
  double offset = 0.;  // metres along the link, in [0, length(link)]
};

class ChainModel {
 public:
  // lengths/masses: one entry per link, all positive.  The mass of link i is
  // lumped at the link tip.  lower/upper are joint limits (radians) with
  // lower[i] < upper[i].  gravity is the scalar acceleration g >= 0 pulling
  // along -y; the generalized gravity vector is G(q) = d/dq sum_i m_i g y_i.
  ChainModel(std::vector<double> lengths, std::vector<double> masses,
             Vec lower, Vec upper, double gravity);

  int dof() const { return n_; }
  double gravity() const { return g_; }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  double length(int link) const { return lengths_.at(link); }

  // Throws std::invalid_argument unless 0 <= cp.link < dof() and
  // 0 <= cp.offset <= length(cp.link).
  void validate(const ControlPoint& cp) const;

  // World position of a control point.
  Vec2 position(const Vec& q, const ControlPoint& cp) const;

  // 2 x n point Jacobian: d position / d q.
  Mat jacobian(const Vec& q, const ControlPoint& cp) const;

  // Central finite difference of jacobian() along qd:
  //   Jdot ~= (J(q + h qd) - J(q - h qd)) / (2 h),  h = 1e-6.
  // This is the time derivative of J along the current velocity.
  Mat jacobian_dot(const Vec& q, const Vec& qd, const ControlPoint& cp) const;

  // Analytic d/dq_k of jacobian(); returns the 2 x n matrix dJ/dq_k.
  Mat jacobian_partial(const Vec& q, const ControlPoint& cp, int k) const;

  // Joint-space mass matrix D(q) = sum_i m_i J_i^T J_i (symmetric positive
  // definite for positive masses and lengths).
  Mat mass_matrix(const Vec& q) const;

  // Coriolis/centrifugal matrix C(q, qd) built from Christoffel symbols of
  // D(q), so Ddot - 2C is skew-symmetric.
  Mat coriolis_matrix(const Vec& q, const Vec& qd) const;

  // Generalized gravity vector G(q).
  Vec gravity_vector(const Vec& q) const;

  // tau = D(q) qdd + C(q, qd) qd + G(q).
  Vec inverse_dynamics(const Vec& q, const Vec& qd, const Vec& qdd) const;

  // Tip of link `link` (equivalent to position() with offset = length).
  Vec2 tip(const Vec& q, int link) const;

 private:
  // Hessian contraction helper: d^2 position / dq_m dq_k for a control point.
  // For the planar chain this is -sum over the affected links of
  // l_j (cos theta_j, sin theta_j), which position() already computes.
  void check_q(const Vec& q) const;

  int n_ = 0;
  std::vector<double> lengths_;
  std::vector<double> masses_;
  Vec lower_, upper_;
  double g_ = 0.;
};

}  // namespace kdf

#endif  // KDFABRICS_SRC_CHAIN_H_
