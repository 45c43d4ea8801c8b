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

#ifndef KDFABRICS_SRC_RESOLVE_H_
#define KDFABRICS_SRC_RESOLVE_H_

// Pullback-and-summation resolution of evaluated behaviors into one
// joint-space acceleration:
//
//   qdd = (sum_k J*_k^T M_k J*_k)^+  *  sum_k J*_k^T M_k (pi_k - Jdot*_k qd)
//
// where ^+ is the Moore-Penrose pseudo-inverse.  Behaviors whose metric is
// exactly zero (switched-off repellers/limits) contribute nothing and are
// skipped.

#include <vector>

#include "chain.h"

namespace kdf {

// One behavior, fully evaluated and prioritized: the priority metric, the
// task-space acceleration policy, and the prioritized Jacobian with its time
// derivative.
struct BehaviorEval {
  Mat metric;      // M_k, dim x dim, symmetric PSD
  Vec pi;          // policy output, dim
  Mat J_star;      // prioritized Jacobian, dim x n
  Mat J_star_dot;  // time derivative of J_star, dim x n
};

struct ResolutionResult {
  Vec ddq;                    // joint accelerations, rad/s^2
  int pullback_rank = 0;      // rank of sum_k J*^T M J*
  double iter_us = 0.;        // control-iteration wall time, filled upstream
  std::vector<Vec> x;         // per-behavior task values (diagnostics)
  std::vector<Vec> dx;        // per-behavior task velocities
  std::vector<Vec> pi;        // per-behavior policies
  std::vector<double> metric_norm;  // ||M_k||
};

// Moore-Penrose pseudo-inverse of a symmetric PSD matrix via spectral
// decomposition; eigenvalues at or below rtol * lambda_max are truncated.
// rtol < 0 selects the default n * machine-epsilon.  Throws on non-finite
// entries.
Mat moore_penrose_pinv(const Mat& A, double rtol = -1.);

// Resolve the evaluated behaviors at joint velocity dq.  Throws on an empty
// list, dimension mismatches, or non-finite inputs.
ResolutionResult resolve(const std::vector<BehaviorEval>& evals, const Vec& dq);

}  // namespace kdf

#endif  // KDFABRICS_SRC_RESOLVE_H_
