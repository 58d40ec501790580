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

#include "hullkit/model.h"

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "hullkit/error.h"
#include "test_support.h"

namespace hullkit {
namespace {

MiqoInstance two_by_two() {
  return MiqoInstance(SymmetricMatrix{{2, -1}, {-1, 3}}, {-1, -1}, {0.1, 0.1},
                      SupportFamily::hypercube());
}

TEST(SupportFamilyTest, CountsAndMembership) {
  EXPECT_EQ(SupportFamily::hypercube().count(5), 32u);
  EXPECT_EQ(SupportFamily::cardinality_at_most(2).count(5), 1u + 5 + 10);
  EXPECT_EQ(SupportFamily::choose_one().count(5), 6u);
  EXPECT_TRUE(SupportFamily::choose_one().contains(0b100));
  EXPECT_FALSE(SupportFamily::choose_one().contains(0b110));
  const SupportFamily list = SupportFamily::explicit_list({5, 0, 2});
  EXPECT_EQ(list.masks(), (std::vector<std::uint64_t>{0, 2, 5}));
  EXPECT_THROW(SupportFamily::explicit_list({1, 1}), Error);
}

TEST(SupportFamilyTest, CardinalityEnumerationMatchesFilter) {
  for (int n = 1; n <= 12; ++n) {
    for (int r = 0; r <= n; ++r) {
      std::vector<std::uint64_t> expected;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (std::popcount(m) <= r) expected.push_back(m);
      }
      const auto got = SupportFamily::cardinality_at_most(r).enumerate(n);
      ASSERT_EQ(got, expected) << n << " " << r;
      ASSERT_EQ(SupportFamily::cardinality_at_most(r).count(n),
                expected.size());
    }
  }
}

TEST(SupportFamilyTest, GuardRefusesHugeFamilies) {
  try {
    SupportFamily::hypercube().enumerate(30);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManySupports);
  }
  EXPECT_EQ(SupportFamily::choose_one().enumerate(40).size(), 41u);
}

TEST(MiqoInstanceTest, RejectsIndefiniteQAndBadShapes) {
  EXPECT_THROW(MiqoInstance(SymmetricMatrix{{1, 2}, {2, 1}}, {0, 0}, {0, 0},
                            SupportFamily::hypercube()),
               Error);
  EXPECT_THROW(MiqoInstance(SymmetricMatrix::identity(2), {0}, {0, 0},
                            SupportFamily::hypercube()),
               Error);
  EXPECT_THROW(MiqoInstance(SymmetricMatrix::identity(2), {0, 0}, {0, 0},
                            SupportFamily::cardinality_at_most(3)),
               Error);
}

TEST(EvaluateObjectiveTest, ZeroPointGivesOffset) {
  const MiqoInstance inst(SymmetricMatrix::identity(2), {1, 1}, {3, 4},
                          SupportFamily::hypercube(), 2.5);
  EXPECT_EQ(evaluate_objective(inst, {{0, 0}, {0, 0}, 0}), 2.5);
  EXPECT_EQ(evaluate_objective(inst, {{0, 0}, {1, 0}, 0}), 5.5);
}

TEST(EvaluateObjectiveTest, StationaryPoint) {
  EXPECT_NEAR(evaluate_objective(two_by_two(), {{0.8, 0.6}, {1, 1}, 0}), -0.5,
              1e-15);
}

TEST(EvaluateObjectiveTest, DimensionMismatch) {
  EXPECT_THROW(evaluate_objective(two_by_two(), {{1}, {1, 1}, 0}), Error);
}

TEST(IsFeasibleTest, Examples) {
  EXPECT_TRUE(is_feasible(two_by_two(), {{3, 0}, {1, 0}, 0}));
  EXPECT_FALSE(is_feasible(two_by_two(), {{0.5, 1}, {0, 1}, 0}));
  const MiqoInstance one(SymmetricMatrix::identity(2), {0, 0}, {0, 0},
                         SupportFamily::choose_one());
  EXPECT_FALSE(is_feasible(one, {{0, 0}, {1, 1}, 0}));
  EXPECT_FALSE(is_feasible(one, {{0, 0}, {0.5, 0}, 0}));
}

TEST(BruteForceTest, TwoByTwoInstance) {
  const BruteForceResult r = brute_force_solve(two_by_two());
  EXPECT_NEAR(r.value, -0.5, 1e-15);
  EXPECT_EQ(r.support, IndexSet::all(2));
  EXPECT_NEAR(r.x[0], 0.8, 1e-15);
  EXPECT_NEAR(r.x[1], 0.6, 1e-15);
  EXPECT_EQ(r.supports_visited, 4u);
}

TEST(BruteForceTest, ZeroLinearTermPicksEmptySupport) {
  const MiqoInstance inst(SymmetricMatrix::identity(3), {0, 0, 0}, {1, 2, 3},
                          SupportFamily::hypercube(), 7.0);
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_EQ(r.value, 7.0);
  EXPECT_TRUE(r.support.empty());
}

TEST(BruteForceTest, TiesGoToSmallestMask) {
  // Both singletons give -1/2; the pair gives the same value since b
  // charges the extra index exactly what it saves.
  const MiqoInstance inst(SymmetricMatrix::identity(2), {-1, -1}, {0, 0.5},
                          SupportFamily::hypercube());
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_EQ(r.value, -0.5);
  EXPECT_EQ(r.support.mask(), 0b01u);
}

// Golden-section minimization of a convex function on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      hi = d, d = c, fd = fc;
      c = hi - g * (hi - lo), fc = f(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + g * (hi - lo), fd = f(d);
    }
  }
  return std::min(fc, fd);
}

TEST(BruteForceTest, NearRankOneMatchesNestedLineSearch) {
  const double eps = 1e-6;
  const SymmetricMatrix q =
      SymmetricMatrix::outer({1, 2}) + eps * SymmetricMatrix::identity(2);
  const MiqoInstance inst(q, {-1, 0}, {0, 0}, SupportFamily::hypercube());
  const BruteForceResult r = brute_force_solve(inst);
  auto f = [&](double x0, double x1) {
    return -x0 + 0.5 * ((x0 + 2 * x1) * (x0 + 2 * x1) +
                        eps * (x0 * x0 + x1 * x1));
  };
  const double box = 1e7;
  double best = 0.0;  // empty support
  best = std::min(best, golden_min([&](double u) { return f(u, 0); }, -box, box));
  best = std::min(best, golden_min([&](double v) { return f(0, v); }, -box, box));
  best = std::min(best, golden_min(
                            [&](double v) {
                              return golden_min(
                                  [&](double u) { return f(u, v); }, -box, box);
                            },
                            -box, box));
  EXPECT_NEAR(r.value, best, 1e-6 * std::abs(best));
  EXPECT_EQ(r.support, IndexSet::all(2));
}

TEST(BruteForceTest, AgreesWithIndependentOracleAndExactPath) {
  std::mt19937_64 rng(5);
  const SupportFamily families[] = {
      SupportFamily::hypercube(), SupportFamily::cardinality_at_most(2),
      SupportFamily::choose_one()};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 10;
    const SupportFamily& z = families[trial % 3];
    const SymmetricMatrix q = testing::random_pd(n, 0.1, rng);
    Vector a(n), b(n);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
      a[i] = 3 * normal(rng);
      b[i] = std::abs(normal(rng));
    }
    if (z.kind() == SupportFamily::Kind::kCardinalityAtMost && n < 2) continue;
    const MiqoInstance inst(q, a, b, z, 0.25);
    const BruteForceResult r = brute_force_solve(inst);

    double min_eval = std::numeric_limits<double>::infinity();
    for (std::uint64_t m : z.enumerate(n)) {
      const IndexSet s = IndexSet::from_mask(m, n);
      min_eval = std::min(min_eval, evaluate_objective(
                                        inst, {support_minimizer(inst, s),
                                               indicator(m, n), 0}));
    }
    EXPECT_EQ(r.value, min_eval) << trial;

    const auto oracle =
        testing::support_oracle(q, a, b, 0.25, z.enumerate(n));
    EXPECT_NEAR(r.value, oracle.value, 1e-9 * (1 + std::abs(oracle.value)))
        << trial;
    EXPECT_TRUE(is_feasible(inst, {r.x, indicator(r.support.mask(), n), 0}));
  }
}

TEST(BruteForceTest, ThreadCountDoesNotChangeResult) {
  const SymmetricMatrix q = gen_random_psd(14, 3, 0.5);
  Vector a(14);
  for (int i = 0; i < 14; ++i) a[i] = std::sin(1.0 + i) * 4;
  const MiqoInstance inst(q, a, Vector(14, 0.3), SupportFamily::hypercube());
  setenv("HULLKIT_THREADS", "1", 1);
  const BruteForceResult serial = brute_force_solve(inst);
  setenv("HULLKIT_THREADS", "4", 1);
  const BruteForceResult parallel = brute_force_solve(inst);
  unsetenv("HULLKIT_THREADS");
  EXPECT_EQ(serial.value, parallel.value);
  EXPECT_EQ(serial.support, parallel.support);
  EXPECT_EQ(serial.supports_visited, parallel.supports_visited);
}

TEST(BruteForceTest, EnlargingExplicitListNeverIncreasesValue) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4;
    const SymmetricMatrix q = testing::random_pd(n, 0.2, rng);
    Vector a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rng() % 7) - 3;
      b[i] = static_cast<double>(rng() % 3) * 0.1;
    }
    std::vector<std::uint64_t> masks = {0};
    double previous = std::numeric_limits<double>::infinity();
    for (std::uint64_t m = 1; m < 16; ++m) {
      if (rng() % 2 == 0) continue;
      masks.push_back(m);
      const MiqoInstance inst(q, a, b, SupportFamily::explicit_list(masks));
      const double v = brute_force_solve(inst).value;
      EXPECT_LE(v, previous);
      previous = v;
    }
  }
}

TEST(FactorizedBruteForceTest, RankOneMatchesClosedForm) {
  // Q = h h^T; with a = alpha h every support meeting supp(h) reaches
  // b(S) - alpha^2 / 2.
  const Matrix h{{1}, {2}, {-1}};
  const FactorizedInstance inst(h, {2, 4, -2}, {0.3, 0.1, 0.2},
                                SupportFamily::hypercube());
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_NEAR(r.value, 0.1 - 2.0, 1e-12);
  EXPECT_EQ(r.support.mask(), 0b010u);
  EXPECT_NEAR(r.x[1], -1.0, 1e-12);
}

TEST(FactorizedBruteForceTest, OutOfRangeLinearTermIsUnbounded) {
  const FactorizedInstance inst(Matrix{{1}, {1}}, {1, 0}, {0, 0},
                                SupportFamily::hypercube());
  EXPECT_EQ(brute_force_solve(inst).value,
            -std::numeric_limits<double>::infinity());
}

TEST(GenBestSubsetTest, ExactFit) {
  const MiqoInstance inst = gen_best_subset(Matrix::identity(2), {1, 1}, 1.0);
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_NEAR(r.value, 0.0, 1e-15);
  EXPECT_NEAR(r.x[0], 1.0, 1e-15);
  EXPECT_NEAR(r.x[1], 1.0, 1e-15);
}

TEST(GenBestSubsetTest, HalfCardinality) {
  const MiqoInstance inst = gen_best_subset(Matrix::identity(2), {1, 1}, 0.5);
  EXPECT_EQ(inst.support_family().cardinality(2), 1);
  EXPECT_NEAR(brute_force_solve(inst).value, 1.0, 1e-15);
}

TEST(GenBestSubsetTest, ZeroResponse) {
  const MiqoInstance inst =
      gen_best_subset(Matrix{{1, 2}, {3, 4}, {5, 7}}, {0, 0, 0}, 0.5);
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.support.empty());
}

TEST(GenBestSubsetTest, ObjectiveIsResidualSumOfSquares) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix f = testing::random_matrix(9, 5, rng);
    const Matrix beta_m = testing::random_matrix(9, 1, rng);
    const Vector beta = beta_m.col(0);
    const MiqoInstance inst = gen_best_subset(f, beta, 0.4);
    EXPECT_EQ(inst.support_family().cardinality(5), 2);
    const Vector x = testing::random_matrix(5, 1, rng).col(0);
    const Vector fx = f * x;
    double rss = 0.0;
    for (int i = 0; i < 9; ++i) rss += (beta[i] - fx[i]) * (beta[i] - fx[i]);
    EXPECT_NEAR(evaluate_objective(inst, {x, Vector(5, 1.0), 0}), rss, 1e-9);
  }
}

TEST(GenGmrfTest, OneByTwoGrid) {
  const MiqoInstance inst = gen_gmrf(1, 2, 1.0, 1.0, {1, 0});
  EXPECT_EQ(inst.q().dense(), (Matrix{{4, -2}, {-2, 4}}));
  EXPECT_EQ(inst.a(), (Vector{-2, 0}));
  EXPECT_EQ(inst.offset(), 1.0);
}

TEST(GenGmrfTest, ZeroObservationsGiveZero) {
  const MiqoInstance inst = gen_gmrf(2, 3, 0.5, 0.5, Vector(6, 0.0));
  const BruteForceResult r = brute_force_solve(inst);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.support.empty());
}

TEST(GenGmrfTest, DiagonalReflectsDegree) {
  const double sigma = 0.3;
  const MiqoInstance inst = gen_gmrf(2, 2, sigma, 0.5, Vector(4, 1.0));
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(inst.q()(i, i), 2 * (1 / (sigma * sigma) + 2), 1e-12);
  }
}

TEST(GenGmrfTest, ObjectiveIsDirectDoubleSum) {
  std::mt19937_64 rng(4);
  const int rows = 3, cols = 4, n = rows * cols;
  const double sigma = 0.7;
  const Vector y = testing::random_matrix(n, 1, rng).col(0);
  const MiqoInstance inst = gen_gmrf(rows, cols, sigma, 0.3, y);
  EXPECT_EQ(inst.support_family().cardinality(n), 4);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = testing::random_matrix(n, 1, rng).col(0);
    double direct = 0.0;
    for (int i = 0; i < n; ++i) {
      direct += (y[i] - x[i]) * (y[i] - x[i]) / (sigma * sigma);
    }
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const int u = r * cols + c;
        if (c + 1 < cols) direct += (x[u] - x[u + 1]) * (x[u] - x[u + 1]);
        if (r + 1 < rows) {
          direct += (x[u] - x[u + cols]) * (x[u] - x[u + cols]);
        }
      }
    }
    EXPECT_NEAR(evaluate_objective(inst, {x, Vector(n, 1.0), 0}), direct,
                1e-9 * (1 + direct));
  }
}

TEST(GenRandomPsdTest, ShiftBoundsSpectrum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_GE(min_eigenvalue(gen_random_psd(6, seed, 1.0)), 1.0 - 1e-9);
  }
}

TEST(GenRandomPsdTest, DeterministicPerSeed) {
  EXPECT_EQ(gen_random_psd(5, 42, 0.0), gen_random_psd(5, 42, 0.0));
  EXPECT_NE(gen_random_psd(5, 42, 0.0), gen_random_psd(5, 43, 0.0));
}

TEST(GenRandomPsdTest, ScalarCase) {
  const SymmetricMatrix q = gen_random_psd(1, 9, 0.5);
  EXPECT_GE(q(0, 0), 0.5);
}

}  // namespace
}  // namespace hullkit
