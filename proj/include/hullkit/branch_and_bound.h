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

// Best-bound branch and bound over LinearModel integrality flags.

#ifndef HULLKIT_BRANCH_AND_BOUND_H_
#define HULLKIT_BRANCH_AND_BOUND_H_

#include <cstdint>
#include <vector>

#include "hullkit/linear_model.h"
#include "hullkit/simplex.h"

namespace hullkit {

enum class BnbStatus { kOptimal, kTimeLimit, kInfeasible, kUnbounded };

const char* bnb_status_name(BnbStatus s);

struct BnbOptions {
  double integrality_tol = 1e-6;
  double prune_tol = 1e-9;
  // Known objective upper bound; nodes that cannot beat it are pruned.
  double cutoff = kInfinity;
  // Rows appended to the model before the root solve.
  std::vector<Constraint> root_cuts;
  SimplexOptions lp;
};

struct BnbResult {
  BnbStatus status = BnbStatus::kInfeasible;
  double value = kInfinity;  // incumbent objective
  Vector incumbent;
  std::int64_t nodes = 0;    // LP relaxations created, root included
  double root_bound = -kInfinity;
  double best_bound = -kInfinity;  // final global lower bound
  std::int64_t lp_iterations = 0;
  double seconds = 0.0;
};

// Nodes are solved when created and expanded in order of (bound, id).
// Branching picks the most fractional integer variable, lowest index on
// ties; a node is pruned when its bound >= incumbent - prune_tol.
BnbResult branch_and_bound(const LinearModel& model, double time_limit_seconds,
                           const BnbOptions& options = {});

}  // namespace hullkit

#endif  // HULLKIT_BRANCH_AND_BOUND_H_
