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

#ifndef KDFABRICS_SRC_PRIORITIZE_H_
#define KDFABRICS_SRC_PRIORITIZE_H_

// Strict behavior hierarchy via dynamically-consistent nullspace projection.
//
// Each behavior k with raw task Jacobian J_k, selection matrix S_k, and
// priority rank rho_k receives the prioritized Jacobian
//
//   J*_k = J_k * S_k * N_pr(rho_k),   N_pr(rho) = prod_j N_j,
//
// where the product runs over every behavior j of strictly higher priority
// (rho_j < rho_k) in registration order, N_j = I - Jbar_j J_j, and Jbar is
// the dynamically-consistent pseudo-inverse under the joint-space mass
// matrix.  Priority 1 is the highest rank: N_pr(1) = I.  Equal-priority
// behaviors do not project each other; they compete through their metric
// weights at resolution.

#include <vector>

#include "chain.h"

namespace kdf {

// Regularization floor for (J D^-1 J^T): when its smallest eigenvalue is at
// or below this, delta * I is added before inversion.  Kept conditional so
// well-conditioned stacks satisfy J * Jbar = I to machine accuracy.
constexpr double kPinvRegularization = 1e-6;

// Jbar = D^-1 J^T (J D^-1 J^T)^-1.  D must be symmetric positive definite.
// When J has full row rank and is well conditioned, J * Jbar = I_m.
Mat dyn_consistent_pinv(const Mat& J, const Mat& D);

// N = I - Jbar * J.  A matrix with zero rows (no higher-priority behavior)
// yields N = I.  N is idempotent and J * N = 0 for full-row-rank J.
Mat nullspace(const Mat& J, const Mat& D);

// One behavior's slot in the priority stack.  `selection` is the n x n
// diagonal 0/1 actuation-selection matrix S_k (identity for fully actuated
// use).  Entries must be pre-sorted by ascending priority, registration
// order within equal priority.
struct StackEntry {
  Mat J;          // raw task Jacobian, dim x n
  Mat selection;  // S_k, n x n
  int priority = 2;
};

// Prioritized Jacobians J*_k for a sorted stack, in the same order as the
// input.  The nullspace product N_pr(rho) is cached per priority level.
std::vector<Mat> prioritized_jacobians(const std::vector<StackEntry>& stack,
                                       const Mat& D);

}  // namespace kdf

#endif  // KDFABRICS_SRC_PRIORITIZE_H_
