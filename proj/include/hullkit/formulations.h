// Copyright 2026 The Hullkit Authors
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

// Mixed-integer linear formulation over the (z, W) polytope and the inputs of
// the convex baseline relaxations.

#ifndef HULLKIT_FORMULATIONS_H_
#define HULLKIT_FORMULATIONS_H_

#include <utility>

#include "hullkit/linalg.h"
#include "hullkit/linear_model.h"
#include "hullkit/model.h"

namespace hullkit {

struct BigMData {
  double lambda_max_inv = 0.0;  // largest eigenvalue of Q^{-1}
  double max_row_norm = 0.0;    // max_i ||Q_i||_2
  double m = 0.0;               // their product
};

// Throws kNotPositiveDefinite unless Q is positive definite.
BigMData big_m_constants(const SymmetricMatrix& q);

// Variables z_0..z_{n-1} (binary) come first, then W_ij for i <= j row-major
// (free). Rows, in order:
//   trace_i:      sum_k Q_ik W_ki - z_i = 0
//   bigm_i_j_up:  sum_k Q_ik W_kj + M z_i <= M         (i != j)
//   bigm_i_j_lo: -sum_k Q_ik W_kj + M z_i <= M
//   wabs_*:       +-W_ij - lambda z_i <= 0 and +-W_ij - lambda z_j <= 0
//                 (one pair for the diagonal)
//   Z rows:       card (sum z <= r), or no-good cuts for explicit lists.
// Objective: -1/2 <a a^T, W> + b^T z + offset.
// Explicit lists whose complement has more than 64 masks throw
// kUnsupportedSupportFamily.
LinearModel build_milo(const MiqoInstance& inst);

inline int milo_z_index(int /*n*/, int i) { return i; }
inline int milo_w_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return n + i * n - i * (i - 1) / 2 + (j - i);
}
int milo_num_variables(int n);
// Packs (z, W) into the variable order of build_milo.
Vector milo_point(const Vector& z, const SymmetricMatrix& w);
SymmetricMatrix milo_w(const Vector& x, int n);

// Same model with every integrality flag cleared; bounds are kept.
LinearModel relax(const LinearModel& model);

// 5 ||Q^{-1} a||_inf per coordinate. Zero when a = 0.
Vector natural_bound_heuristic(const MiqoInstance& inst);

// lambda_min(Q), floored at zero.
double perspective_delta(const SymmetricMatrix& q);

struct ConvexBaselineSpec {
  enum class Kind { kNatural, kPerspective };
  Kind kind = Kind::kPerspective;
  Vector bounds;       // natural: M_i > 0
  double delta = 0.0;  // perspective: 0 <= delta <= lambda_min(Q) + 1e-9

  static ConvexBaselineSpec natural(Vector bounds);
  static ConvexBaselineSpec perspective(double delta, const SymmetricMatrix& q);
};

}  // namespace hullkit

#endif  // HULLKIT_FORMULATIONS_H_
