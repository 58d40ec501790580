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

#include "hullkit/branch_and_bound.h"

#include <chrono>
#include <cmath>
#include <memory>
#include <utility>
#include <queue>

#include "hullkit/error.h"

namespace hullkit {

namespace {

struct Node {
  double bound;
  std::int64_t id;
  std::vector<std::pair<double, double>> int_bounds;  // per integer variable
  Vector primal;
  Basis basis;  // final basis of this node's LP
};

struct NodeOrder {
  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

}  // namespace

const char* bnb_status_name(BnbStatus s) {
  switch (s) {
    case BnbStatus::kOptimal: return "Optimal";
    case BnbStatus::kTimeLimit: return "TimeLimit";
    case BnbStatus::kInfeasible: return "Infeasible";
    case BnbStatus::kUnbounded: return "Unbounded";
  }
  return "?";
}

BnbResult branch_and_bound(const LinearModel& model, double time_limit_seconds,
                           const BnbOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(std::max(0.0, time_limit_seconds)));

  LinearModel work = model;
  for (const Constraint& c : options.root_cuts) {
    work.add_constraint(c.name, c.terms, c.relation, c.rhs);
  }
  std::vector<int> ints;
  for (int j = 0; j < work.num_variables(); ++j) {
    if (!work.variable(j).integer) continue;
    if (!std::isfinite(work.variable(j).lower) || !std::isfinite(work.variable(j).upper)) {
      throw Error(ErrorCode::kInvalidParameters,
                  "integer variable " + work.variable(j).name + " needs finite bounds");
    }
    ints.push_back(j);
  }

  SimplexOptions lp_options = options.lp;
  lp_options.deadline = deadline;
  SimplexSolver solver(work, lp_options);

  BnbResult result;
  auto finish = [&](BnbStatus status) {
    result.status = status;
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
  };

  auto apply = [&](const std::vector<std::pair<double, double>>& b) {
    for (std::size_t k = 0; k < ints.size(); ++k) {
      const int j = ints[k];
      if (solver.column_lower(j) != b[k].first || solver.column_upper(j) != b[k].second) {
        solver.set_column_bounds(j, b[k].first, b[k].second);
      }
    }
  };

  // Index into `ints` of the most fractional variable, or -1.
  auto branching_index = [&](const Vector& x) {
    int pick = -1;
    double best = options.integrality_tol;
    for (std::size_t k = 0; k < ints.size(); ++k) {
      const double v = x[ints[k]];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best) {
        best = frac;
        pick = static_cast<int>(k);
      }
    }
    return pick;
  };

  auto prune_level = [&] { return std::min(result.value, options.cutoff); };

  std::priority_queue<std::unique_ptr<Node>, std::vector<std::unique_ptr<Node>>, NodeOrder> open;
  std::int64_t next_id = 0;
  bool timed_out = false;

  // Solves the LP under `b`; queues or records the result.
  auto evaluate = [&](std::vector<std::pair<double, double>> b) {
    apply(b);
    const LpSolution s = solver.solve();
    ++result.nodes;
    result.lp_iterations += s.iterations;
    const std::int64_t id = next_id++;
    if (s.status == LpStatus::kIterationLimit) {
      timed_out = true;
      return s.status;
    }
    if (s.status != LpStatus::kOptimal) return s.status;
    if (id == 0) result.root_bound = s.value;
    if (s.value >= prune_level() - options.prune_tol) return s.status;
    if (branching_index(s.primal) < 0) {
      result.value = s.value;
      result.incumbent = s.primal;
      for (int j : ints) result.incumbent[j] = std::round(result.incumbent[j]);
      return s.status;
    }
    auto node = std::make_unique<Node>();
    node->bound = s.value;
    node->id = id;
    node->int_bounds = std::move(b);
    node->primal = s.primal;
    node->basis = s.basis;
    open.push(std::move(node));
    return s.status;
  };

  std::vector<std::pair<double, double>> root_bounds;
  for (int j : ints) root_bounds.emplace_back(work.variable(j).lower, work.variable(j).upper);
  const LpStatus root = evaluate(root_bounds);
  if (root == LpStatus::kInfeasible) return finish(BnbStatus::kInfeasible);
  if (root == LpStatus::kUnbounded) return finish(BnbStatus::kUnbounded);
  if (timed_out) return finish(BnbStatus::kTimeLimit);

  while (!open.empty()) {
    if (Clock::now() > deadline) {
      timed_out = true;
      break;
    }
    std::unique_ptr<Node> node = std::move(const_cast<std::unique_ptr<Node>&>(open.top()));
    open.pop();
    if (node->bound >= prune_level() - options.prune_tol) continue;
    const int k = branching_index(node->primal);
    const double v = node->primal[ints[k]];

    std::vector<std::pair<double, double>> down = node->int_bounds;
    down[k].second = std::floor(v);
    std::vector<std::pair<double, double>> up = node->int_bounds;
    up[k].first = std::ceil(v);

    // Both children warm start from the parent's final basis, factored once.
    solver.set_basis(node->basis);
    solver.factorize();
    const auto parent = solver.save_state();
    evaluate(std::move(down));
    if (timed_out) break;
    solver.restore_state(*parent);
    evaluate(std::move(up));
    if (timed_out) break;
  }

  result.best_bound = result.value;
  if (!open.empty() || timed_out) {
    for (; !open.empty(); open.pop()) {
      result.best_bound = std::min(result.best_bound, open.top()->bound);
    }
  }
  if (timed_out) return finish(BnbStatus::kTimeLimit);
  if (!std::isfinite(result.value)) return finish(BnbStatus::kInfeasible);
  return finish(BnbStatus::kOptimal);
}

}  // namespace hullkit
