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

namespace kdf {
namespace {

constexpr double kJacobianDotStep = 1e-6;

}  // namespace

ChainModel::ChainModel(std::vector<double> lengths, std::vector<double> masses,
                       Vec lower, Vec upper, double gravity)
    : n_(static_cast<int>(lengths.size())),
      lengths_(std::move(lengths)),
      masses_(std::move(masses)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      g_(gravity) {
  if (n_ == 0) throw std::invalid_argument("chain: at least one link required");
  if (masses_.size() != static_cast<size_t>(n_))
    throw std::invalid_argument("chain: lengths/masses size mismatch");
  if (lower_.size() != n_ || upper_.size() != n_)
    throw std::invalid_argument("chain: joint limit size mismatch");
  for (int i = 0; i < n_; ++i) {
    if (lengths_[i] <= 0.) throw std::invalid_argument("chain: non-positive link length");
    if (masses_[i] <= 0.) throw std::invalid_argument("chain: non-positive link mass");
    if (lower_[i] >= upper_[i])
      throw std::invalid_argument("chain: lower limit must be below upper limit");
  }
  if (g_ < 0.) throw std::invalid_argument("chain: gravity must be non-negative");
}

void ChainModel::validate(const ControlPoint& cp) const {
  if (cp.link < 0 || cp.link >= n_)
    throw std::invalid_argument("control point: link index out of range");
  if (cp.offset < 0. || cp.offset > lengths_[cp.link])
    throw std::invalid_argument("control point: offset outside link");
}

void ChainModel::check_q(const Vec& q) const {
  if (q.size() != n_) throw std::invalid_argument("chain: configuration size mismatch");
}

Vec2 ChainModel::position(const Vec& q, const ControlPoint& cp) const {
  check_q(q);
  validate(cp);
  Vec2 p = Vec2::Zero();
  double theta = 0.;
  for (int j = 0; j <= cp.link; ++j) {
    theta += q[j];
    const double r = (j == cp.link) ? cp.offset : lengths_[j];
    p += r * Vec2(std::cos(theta), std::sin(theta));
  }
  return p;
}

Vec2 ChainModel::tip(const Vec& q, int link) const {
  return position(q, ControlPoint{link, lengths_.at(link)});
}

Mat ChainModel::jacobian(const Vec& q, const ControlPoint& cp) const {
  check_q(q);
  validate(cp);
  // Column m of J is sum over links j in [m, cp.link] of
  // r_j * (-sin theta_j, cos theta_j); accumulate from the distal end so each
  // column reuses the partial sum of the previous one.
  Mat J = Mat::Zero(2, n_);
  std::vector<double> theta(cp.link + 1);
  double acc = 0.;
  for (int j = 0; j <= cp.link; ++j) {
    acc += q[j];
    theta[j] = acc;
  }
  Vec2 partial = Vec2::Zero();
  for (int m = cp.link; m >= 0; --m) {
    const double r = (m == cp.link) ? cp.offset : lengths_[m];
    partial += r * Vec2(-std::sin(theta[m]), std::cos(theta[m]));
    J.col(m) = partial;
  }
  return J;
}

Mat ChainModel::jacobian_partial(const Vec& q, const ControlPoint& cp, int k) const {
  check_q(q);
  validate(cp);
  if (k < 0 || k >= n_) throw std::invalid_argument("chain: joint index out of range");
  // dJ(:,m)/dq_k = sum over links j in [max(m,k), cp.link] of
  // r_j * (-cos theta_j, -sin theta_j): differentiating the rotation a second
  // time just rotates each term by another 90 degrees.
  Mat dJ = Mat::Zero(2, n_);
  if (k > cp.link) return dJ;
  std::vector<double> theta(cp.link + 1);
  double acc = 0.;
  for (int j = 0; j <= cp.link; ++j) {
    acc += q[j];
    theta[j] = acc;
  }
  Vec2 partial = Vec2::Zero();
  for (int m = cp.link; m >= 0; --m) {
    if (m >= k) {
      const double r = (m == cp.link) ? cp.offset : lengths_[m];
      partial += r * Vec2(-std::cos(theta[m]), -std::sin(theta[m]));
    }
    dJ.col(m) = partial;
  }
  return dJ;
}

Mat ChainModel::jacobian_dot(const Vec& q, const Vec& qd, const ControlPoint& cp) const {
  check_q(q);
  if (qd.size() != n_) throw std::invalid_argument("chain: velocity size mismatch");
  const double h = kJacobianDotStep;
  return (jacobian(q + h * qd, cp) - jacobian(q - h * qd, cp)) / (2. * h);
}

Mat ChainModel::mass_matrix(const Vec& q) const {
  check_q(q);
  Mat D = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    const Mat Ji = jacobian(q, ControlPoint{i, lengths_[i]});
    D.noalias() += masses_[i] * Ji.transpose() * Ji;
  }
  return D;
}

Mat ChainModel::coriolis_matrix(const Vec& q, const Vec& qd) const {
  check_q(q);
  if (qd.size() != n_) throw std::invalid_argument("chain: velocity size mismatch");
  // dD/dq_k = sum_i m_i (dJ_i/dq_k^T J_i + J_i^T dJ_i/dq_k), then
  // C_ij = sum_k 0.5 (dD_ij/dq_k + dD_ik/dq_j - dD_jk/dq_i) qd_k.
  std::vector<Mat> dD(n_, Mat::Zero(n_, n_));
  for (int i = 0; i < n_; ++i) {
    const ControlPoint tip_cp{i, lengths_[i]};
    const Mat Ji = jacobian(q, tip_cp);
    for (int k = 0; k <= i; ++k) {  // dJ_i/dq_k = 0 for k > i
      const Mat dJik = jacobian_partial(q, tip_cp, k);
      dD[k].noalias() += masses_[i] * (dJik.transpose() * Ji + Ji.transpose() * dJik);
    }
  }
  Mat C = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double cij = 0.;
      for (int k = 0; k < n_; ++k)
        cij += 0.5 * (dD[k](i, j) + dD[j](i, k) - dD[i](j, k)) * qd[k];
      C(i, j) = cij;
    }
  return C;
}

Vec ChainModel::gravity_vector(const Vec& q) const {
  check_q(q);
  // U = sum_i m_i g y_i  =>  G_m = sum_i m_i g dy_i/dq_m = sum_i m_i g J_i(1, m).
  Vec G = Vec::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    const Mat Ji = jacobian(q, ControlPoint{i, lengths_[i]});
    G.noalias() += masses_[i] * g_ * Ji.row(1).transpose();
  }
  return G;
}

Vec ChainModel::inverse_dynamics(const Vec& q, const Vec& qd, const Vec& qdd) const {
  check_q(q);
  if (qd.size() != n_ || qdd.size() != n_)
    throw std::invalid_argument("chain: velocity/acceleration size mismatch");
  return mass_matrix(q) * qdd + coriolis_matrix(q, qd) * qd + gravity_vector(q);
}

}  // namespace kdf
