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

#include "prioritize.h"

#include <stdexcept>

namespace kdf {

Mat dyn_consistent_pinv(const Mat& J, const Mat& D) {
  if (D.rows() != D.cols() || J.cols() != D.rows())
    throw std::invalid_argument("dyn_consistent_pinv: dimension mismatch");
  const Mat Dinv_Jt = D.ldlt().solve(J.transpose());
  Mat A = J * Dinv_Jt;  // m x m, symmetric PSD
  A = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(A);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("dyn_consistent_pinv: eigendecomposition failed");
  Vec evals = eig.eigenvalues();
  // Regularize only near singularity so well-conditioned stacks keep
  // J * Jbar = I exactly (up to machine precision).
  if (evals.size() > 0 && evals.minCoeff() <= kPinvRegularization)
    evals.array() += kPinvRegularization;
  const Mat Ainv = eig.eigenvectors() * evals.cwiseInverse().asDiagonal() *
                   eig.eigenvectors().transpose();
  return Dinv_Jt * Ainv;
}

Mat nullspace(const Mat& J, const Mat& D) {
  const Eigen::Index n = D.rows();
  if (J.rows() == 0) return Mat::Identity(n, n);
  const Mat Jbar = dyn_consistent_pinv(J, D);
  return Mat::Identity(n, n) - Jbar * J;
}

std::vector<Mat> prioritized_jacobians(const std::vector<StackEntry>& stack,
                                       const Mat& D) {
  std::vector<Mat> out;
  out.reserve(stack.size());
  if (stack.empty()) return out;
  const Eigen::Index n = D.rows();
  for (size_t k = 1; k < stack.size(); ++k)
    if (stack[k].priority < stack[k - 1].priority)
      throw std::invalid_argument("prioritized_jacobians: stack not sorted");

  // Walk the stack once, maintaining the running product of nullspace
  // projectors over all strictly-higher-priority levels.  Within one level
  // every behavior sees the same cached N_pr; the level's own projectors are
  // folded in (registration order) when the next level starts.
  Mat n_pr = Mat::Identity(n, n);
  size_t level_start = 0;
  for (size_t k = 0; k < stack.size(); ++k) {
    const StackEntry& e = stack[k];
    if (e.J.cols() != n || e.selection.rows() != n || e.selection.cols() != n)
      throw std::invalid_argument("prioritized_jacobians: dimension mismatch");
    if (k > 0 && e.priority != stack[k - 1].priority) {
      for (size_t j = level_start; j < k; ++j)
        n_pr = n_pr * nullspace(stack[j].J, D);
      level_start = k;
    }
    out.push_back(e.J * e.selection * n_pr);
  }
  return out;
}

}  // namespace kdf
