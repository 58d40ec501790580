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

// Projected-gradient bounds for the convex relaxations of the natural and
// perspective formulations, and the %gap metric.

#ifndef HULLKIT_FIRST_ORDER_H_
#define HULLKIT_FIRST_ORDER_H_

#include <string>

#include "hullkit/linalg.h"
#include "hullkit/model.h"

namespace hullkit {

// Euclidean projection onto {z in [0,1]^n : sum z <= r}. Exact up to rounding.
Vector capped_simplex_project(const Vector& v, double r);

// argmin sum_i (w_i - c_i)^2 over 0 <= w_i <= u_i, sum_i s_i w_i <= r, with
// s_i > 0. The capped simplex is the case s = u = 1.
Vector weighted_capped_project(const Vector& c, const Vector& s, const Vector& u,
                               double r);

struct FirstOrderOptions {
  double tol = 1e-7;  // on the unit-step projected-gradient norm
  int max_iterations = 5000;
  double armijo = 1e-4;
  Vector start;  // z for the perspective solver, x for the natural one
};

struct RelaxationBound {
  double value = 0.0;        // objective at the final iterate
  double lower_bound = 0.0;  // value minus the Frank-Wolfe gap; certified
  Vector x;
  Vector z;
  int iterations = 0;
  double pg_norm = 0.0;
  bool converged = false;
};

// Cardinality cap of the capped-simplex relaxation of Z: n for the hypercube,
// r for CardinalityAtMost(r), 1 for ChooseOne. Explicit lists throw
// kUnsupportedSupportFamily.
double relaxation_cap(const MiqoInstance& inst);

// min over the capped simplex of
//   g(z) = -1/2 a^T (Q - delta I + delta diag(1/z))^{-1} a + b^T z + offset.
// Coordinates with z_i <= 1e-9 are dropped together with x_i (delta > 0).
// Throws kInvalidDelta unless 0 <= delta <= lambda_min(Q) + 1e-9.
RelaxationBound perspective_relaxation_bound(const MiqoInstance& inst, double delta,
                                             const FirstOrderOptions& opt = {});

// min 1/2 x^T Q x + a^T x + sum_i b_i |x_i| / M_i + offset
// s.t. |x_i| <= M_i, sum_i |x_i| / M_i <= r, with z_i = |x_i| / M_i eliminated.
// Throws kUnsupportedSign when some b_i < 0 and kInvalidParameters unless
// every M_i > 0.
RelaxationBound natural_relaxation_bound(const MiqoInstance& inst, const Vector& bounds,
                                         const FirstOrderOptions& opt = {});

struct GapReport {
  std::string formulation;
  double opt = 0.0;
  double lower_bound = 0.0;
  double gap_percent = 0.0;
  bool absolute = false;  // |opt| <= 1e-12: gap_percent holds opt - lower_bound
};

GapReport gap_report(double opt, double lower_bound, std::string formulation);

}  // namespace hullkit

#endif  // HULLKIT_FIRST_ORDER_H_
