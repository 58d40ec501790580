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

// Bounded primal simplex for LinearModel.
//
// Rows are handled in computational form A x - s = 0 with bounds on both x
// and the row activities s. Basis solves factor only the kernel A[R, C],
// where C are the basic structural columns and R the rows whose activity is
// nonbasic; updates are kept in product form and refactored periodically.

#ifndef HULLKIT_SIMPLEX_H_
#define HULLKIT_SIMPLEX_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hullkit/linalg.h"
#include "hullkit/linear_model.h"

namespace hullkit {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* lp_status_name(LpStatus s);

// Per-variable basis status over the structural columns followed by the row
// activities.
struct Basis {
  enum Status : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };
  std::vector<Status> status;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;       // objective including the model constant
  Vector primal;            // structural values
  Vector dual;              // per row; d value / d rhs
  Vector reduced_costs;     // per structural
  std::int64_t iterations = 0;
  Basis basis;
};

struct SimplexOptions {
  int refactor_interval = 50;
  int degenerate_limit = 50;    // consecutive degenerate pivots before Bland
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double ratio_pivot_tol = 1e-7;   // smaller entries are ignored in ratio tests
  double breakdown_pivot = 1e-11;  // smaller accepted pivots throw
  std::int64_t max_iterations = 0;  // 0 means 100 * (rows + columns)
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Reoptimize with the dual simplex when the starting basis is dual feasible.
  bool dual_warm_start = true;
};

// Reusable solver for one constraint matrix. Variable bounds may change
// between solves; the previous basis is then used as a warm start.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearModel& model, SimplexOptions options = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  int num_columns() const;
  int num_rows() const;
  void set_column_bounds(int j, double lower, double upper);
  double column_lower(int j) const;
  double column_upper(int j) const;
  // Resets to the all-slack basis.
  void reset_basis();
  // Throws kDimensionMismatch on a malformed basis.
  void set_basis(const Basis& basis);
  // Throws NumericalBreakdown when no usable pivot remains.
  LpSolution solve();

  // Factors the current basis now instead of at the next solve.
  void factorize();

  // Copy of the basis, iterate and factorization. Restoring keeps the
  // current bounds.
  class State;
  std::shared_ptr<const State> save_state() const;
  void restore_state(const State& state);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LpSolution simplex_solve(const LinearModel& model, const SimplexOptions& options = {});

// Lagrangian bound min over the variable and row boxes of
// c^T x - y^T (A x - s); a valid lower bound for any y. Coefficients within
// zero_tol of zero on an unbounded side count as zero.
double lagrangian_dual_value(const LinearModel& model, const Vector& y,
                             double zero_tol = 0.0);

}  // namespace hullkit

#endif  // HULLKIT_SIMPLEX_H_
