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

#include "hullkit/simplex.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "hullkit/error.h"
#include "hullkit/formulations.h"
#include "hullkit/polytope.h"
#include "test_support.h"

namespace hullkit {
namespace {

TEST(SimplexTest, HandLp) {
  LinearModel m;
  const int x1 = m.add_variable("x1", 0, kInfinity);
  const int x2 = m.add_variable("x2", 0, kInfinity);
  m.add_constraint("c", {{x1, 1}, {x2, 1}}, Relation::kLessEqual, 1);
  m.set_objective(x1, -1);
  m.set_objective(x2, -1);
  const LpSolution s = simplex_solve(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, -1.0, 1e-12);
  EXPECT_NEAR(s.dual[0], -1.0, 1e-12);
}

TEST(SimplexTest, Unbounded) {
  LinearModel m;
  const int x1 = m.add_variable("x1", 0, kInfinity);
  m.set_objective(x1, -1);
  EXPECT_EQ(simplex_solve(m).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, Infeasible) {
  LinearModel m;
  const int x1 = m.add_variable("x1", -kInfinity, kInfinity);
  m.add_constraint("a", {{x1, 1}}, Relation::kLessEqual, 0);
  m.add_constraint("b", {{x1, 1}}, Relation::kGreaterEqual, 1);
  EXPECT_EQ(simplex_solve(m).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, EqualityAndFreeVariables) {
  // min x + 2y  s.t.  x + y = 3, x - y <= 1, y free, x in [0, 10].
  LinearModel m;
  const int x = m.add_variable("x", 0, 10);
  const int y = m.add_variable("y", -kInfinity, kInfinity);
  m.add_constraint("e", {{x, 1}, {y, 1}}, Relation::kEqual, 3);
  m.add_constraint("l", {{x, 1}, {y, -1}}, Relation::kLessEqual, 1);
  m.set_objective(x, 1);
  m.set_objective(y, 2);
  const LpSolution s = simplex_solve(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.primal[x], 2.0, 1e-12);
  EXPECT_NEAR(s.primal[y], 1.0, 1e-12);
  EXPECT_NEAR(s.value, 4.0, 1e-12);
}

TEST(SimplexTest, ObjectiveConstantIsIncluded) {
  LinearModel m;
  const int x = m.add_variable("x", 1, 2);
  m.set_objective(x, 3);
  m.set_objective_constant(-0.5);
  EXPECT_NEAR(simplex_solve(m).value, 2.5, 1e-15);
}

LinearModel random_lp(std::mt19937_64& rng, int n, int rows) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearModel m;
  Vector x0(n);
  for (int j = 0; j < n; ++j) {
    const int kind = static_cast<int>(rng() % 4);
    double lo = -kInfinity, up = kInfinity;
    if (kind == 0) { lo = -1 - std::abs(g(rng)); up = 1 + std::abs(g(rng)); }
    if (kind == 1) lo = -1.0;
    if (kind == 2) up = 2.0;
    if (kind == 3) { lo = 0; up = 1; }
    m.add_variable("x" + std::to_string(j), lo, up);
    x0[j] = std::isfinite(lo) ? (std::isfinite(up) ? 0.5 * (lo + up) : lo + 0.3) : (std::isfinite(up) ? up - 0.3 : u(rng));
    m.set_objective(j, g(rng));
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> t;
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rng() % 3 == 0) continue;
      const double c = g(rng);
      t.push_back({j, c});
      act += c * x0[j];
    }
    const int rel = static_cast<int>(rng() % 5);
    if (rel == 0) {
      m.add_constraint("r" + std::to_string(i), t, Relation::kEqual, act);
    } else if (rel <= 2) {
      m.add_constraint("r" + std::to_string(i), t, Relation::kLessEqual, act + std::abs(g(rng)));
    } else {
      m.add_constraint("r" + std::to_string(i), t, Relation::kGreaterEqual, act - std::abs(g(rng)));
    }
  }
  // Box every variable through two rows so the LP stays bounded.
  for (int j = 0; j < n; ++j) {
    m.add_constraint("bu" + std::to_string(j), {{j, 1}}, Relation::kLessEqual, 5);
    m.add_constraint("bl" + std::to_string(j), {{j, 1}}, Relation::kGreaterEqual, -5);
  }
  return m;
}

TEST(SimplexTest, RandomLpsCertifiedByDuality) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const int rows = 1 + static_cast<int>(rng() % 12);
    const LinearModel m = random_lp(rng, n, rows);
    const LpSolution s = simplex_solve(m);
    ASSERT_EQ(s.status, LpStatus::kOptimal) << trial;
    EXPECT_LE(m.max_violation(s.primal), 1e-8) << trial;
    EXPECT_NEAR(m.objective_value(s.primal), s.value, 1e-9);
    const double dual = lagrangian_dual_value(m, s.dual, 1e-9);
    EXPECT_NEAR(dual, s.value, 1e-7 * (1 + std::abs(s.value))) << trial;
    for (int j = 0; j < n; ++j) {
      const Variable& v = m.variable(j);
      if (s.reduced_costs[j] < -1e-9) {
        EXPECT_NEAR(s.primal[j], v.upper, 1e-9);
      }
      if (s.reduced_costs[j] > 1e-9) {
        EXPECT_NEAR(s.primal[j], v.lower, 1e-9);
      }
    }
  }
}

TEST(SimplexTest, RefactorIntervalDoesNotChangeOptimum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearModel m = random_lp(rng, 15, 20);
    SimplexOptions a;
    a.refactor_interval = 1;
    SimplexOptions b;
    b.refactor_interval = 50;
    EXPECT_NEAR(simplex_solve(m, a).value, simplex_solve(m, b).value, 1e-8);
  }
}

TEST(SimplexTest, WarmStartAfterBoundChange) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    LinearModel m = random_lp(rng, 10, 10);
    SimplexSolver solver(m);
    const LpSolution first = solver.solve();
    ASSERT_EQ(first.status, LpStatus::kOptimal);
    const int j = trial % 10;
    const double lo = std::isfinite(m.variable(j).lower) ? m.variable(j).lower : -5.0;
    const double mid = std::max(lo, std::min(first.primal[j] - 0.25, 5.0));
    solver.set_column_bounds(j, lo, mid);
    const LpSolution warm = solver.solve();
    m.set_bounds(j, lo, mid);
    const LpSolution cold = simplex_solve(m);
    ASSERT_EQ(warm.status, cold.status);
    if (cold.status == LpStatus::kOptimal) {
      EXPECT_NEAR(warm.value, cold.value, 1e-8 * (1 + std::abs(cold.value)));
    }
  }
}

TEST(SimplexTest, DegenerateLpTerminates) {
  // Many redundant rows through the optimal vertex.
  LinearModel m;
  const int x = m.add_variable("x", 0, kInfinity);
  const int y = m.add_variable("y", 0, kInfinity);
  for (int k = 1; k <= 40; ++k) {
    m.add_constraint("r" + std::to_string(k), {{x, static_cast<double>(k)}, {y, 1.0}},
                     Relation::kLessEqual, 0.0);
  }
  m.set_objective(x, -1);
  m.set_objective(y, -1);
  const LpSolution s = simplex_solve(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 0.0, 1e-12);
}

TEST(SimplexTest, MiloRelaxationBoundsBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const SymmetricMatrix q = testing::random_pd(n, 0.3, rng);
    Vector a = testing::random_matrix(n, 1, rng).col(0);
    Vector b(n, 0.05);
    const MiqoInstance inst(q, a, b, SupportFamily::cardinality_at_most(1 + n / 2));
    const LinearModel lp = relax(build_milo(inst));
    const LpSolution s = simplex_solve(lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_LE(lp.max_violation(s.primal), 1e-8);
    EXPECT_LE(s.value, brute_force_solve(inst).value + 1e-9);
    EXPECT_NEAR(lagrangian_dual_value(lp, s.dual, 1e-9), s.value, 1e-7 * (1 + std::abs(s.value)));
  }
}

}  // namespace
}  // namespace hullkit
