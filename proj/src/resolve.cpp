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

#include "resolve.h"

#include <limits>
#include <stdexcept>

namespace kdf {

Mat moore_penrose_pinv(const Mat& A, double rtol) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("moore_penrose_pinv: matrix must be square");
  if (!A.allFinite())
    throw std::invalid_argument("moore_penrose_pinv: non-finite entries");
  if (rtol < 0.)
    rtol = static_cast<double>(A.rows()) * std::numeric_limits<double>::epsilon();
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (A + A.transpose()));
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("moore_penrose_pinv: eigendecomposition failed");
  const Vec& evals = eig.eigenvalues();
  const double cutoff = rtol * std::max(evals.cwiseAbs().maxCoeff(), 0.);
  Vec inv = Vec::Zero(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] > cutoff && evals[i] > 0.) inv[i] = 1. / evals[i];
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

ResolutionResult resolve(const std::vector<BehaviorEval>& evals, const Vec& dq) {
  if (evals.empty()) throw std::invalid_argument("resolve: empty eval list");
  const Eigen::Index n = dq.size();
  Mat A = Mat::Zero(n, n);
  Vec b = Vec::Zero(n);
  for (const BehaviorEval& e : evals) {
    if (e.J_star.cols() != n || e.J_star_dot.cols() != n ||
        e.metric.rows() != e.metric.cols() || e.metric.rows() != e.J_star.rows() ||
        e.pi.size() != e.J_star.rows() || e.J_star_dot.rows() != e.J_star.rows())
      throw std::invalid_argument("resolve: dimension mismatch");
    if (!e.metric.allFinite() || !e.pi.allFinite() || !e.J_star.allFinite() ||
        !e.J_star_dot.allFinite())
      throw std::invalid_argument("resolve: non-finite eval");
    if (e.metric.isZero(0.)) continue;  // switched-off behavior: no contribution
    const Mat JtM = e.J_star.transpose() * e.metric;
    A.noalias() += JtM * e.J_star;
    b.noalias() += JtM * (e.pi - e.J_star_dot * dq);
  }
  ResolutionResult r;
  const double rtol = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (A + A.transpose()));
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("resolve: eigendecomposition failed");
  const Vec& evs = eig.eigenvalues();
  const double cutoff = rtol * std::max(evs.cwiseAbs().maxCoeff(), 0.);
  Vec inv = Vec::Zero(evs.size());
  for (Eigen::Index i = 0; i < evs.size(); ++i) {
    if (evs[i] > cutoff && evs[i] > 0.) {
      inv[i] = 1. / evs[i];
      ++r.pullback_rank;
    }
  }
  r.ddq = eig.eigenvectors() * (inv.asDiagonal() * (eig.eigenvectors().transpose() * b));
  if (!r.ddq.allFinite()) throw std::runtime_error("resolve: non-finite result");
  return r;
}

}  // namespace kdf
