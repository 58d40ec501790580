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

#include "hullkit/polytope.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "hullkit/error.h"
#include "test_support.h"

namespace hullkit {
namespace {

using ::hullkit::testing::max_abs_diff;

MiqoInstance bivariate(double d1, double d2) {
  return MiqoInstance(SymmetricMatrix{{d1, -1}, {-1, d2}}, {0, 0}, {0, 0},
                      SupportFamily::hypercube());
}

FactorizedInstance three_variable_factor(SupportFamily z) {
  return FactorizedInstance(Matrix{{1, 0}, {1, 0}, {1, 1}}, {0, 0, 0},
                            {0, 0, 0}, std::move(z));
}

TEST(EnumerateVerticesTest, BivariateTableRows) {
  for (const auto& [d1, d2] : {std::pair{2.0, 3.0}, {2.0, 2.0}, {5.0, 0.3}}) {
    const double delta = d1 * d2 - 1;
    const VertexSet vs = enumerate_vertices(bivariate(d1, d2));
    ASSERT_EQ(vs.vertices.size(), 4u);
    const Matrix expected[] = {
        Matrix{{0, 0}, {0, 0}},
        Matrix{{1 / d1, 0}, {0, 0}},
        Matrix{{0, 0}, {0, 1 / d2}},
        Matrix{{d2 / delta, 1 / delta}, {1 / delta, d1 / delta}},
    };
    for (int v = 0; v < 4; ++v) {
      EXPECT_EQ(vs.vertices[v].mask, static_cast<std::uint64_t>(v));
      EXPECT_LE(max_abs_diff(vs.vertices[v].w.dense(), expected[v]), 1e-12)
          << d1 << " " << d2 << " vertex " << v;
    }
  }
}

TEST(EnumerateVerticesTest, SubstitutedFullSupportVertex) {
  const VertexSet vs = enumerate_vertices(bivariate(2, 3));
  EXPECT_LE(max_abs_diff(vs.vertices[3].w.dense(),
                         Matrix{{0.6, 0.2}, {0.2, 0.4}}),
            1e-15);
}

TEST(EnumerateVerticesTest, SingleEmptySupport) {
  const MiqoInstance inst(SymmetricMatrix{{2, -1}, {-1, 3}}, {0, 0}, {0, 0},
                          SupportFamily::explicit_list({0}));
  const VertexSet vs = enumerate_vertices(inst);
  ASSERT_EQ(vs.vertices.size(), 1u);
  EXPECT_EQ(vs.vertices[0].w, SymmetricMatrix(2));
  EXPECT_EQ(vs.vertices[0].z, (Vector{0, 0}));
}

TEST(EnumerateVerticesTest, SingularQRaises) {
  const MiqoInstance inst(SymmetricMatrix{{1, 1}, {1, 1}}, {0, 0}, {0, 0},
                          SupportFamily::hypercube());
  try {
    enumerate_vertices(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularSubmatrix);
  }
}

TEST(EnumerateFactorizedTest, ThreeVariableTable) {
  const VertexSet vs =
      enumerate_vertices_factorized(three_variable_factor(SupportFamily::hypercube()));
  ASSERT_EQ(vs.vertices.size(), 8u);
  EXPECT_EQ(vs.k, 2);
  // Indexed by mask with bit i for z_{i+1}.
  const Matrix half{{0.5, 0.5}, {0.5, 0.5}};
  const Matrix e11{{1, 0}, {0, 0}};
  const Matrix id = Matrix::identity(2);
  const Matrix expected[] = {Matrix(2, 2), e11, e11, e11, half, id, id, id};
  for (int m = 0; m < 8; ++m) {
    EXPECT_LE(max_abs_diff(vs.vertices[m].w.dense(), expected[m]), 1e-12)
        << "mask " << m;
  }
}

TEST(EnumerateFactorizedTest, RankOneProjectionIsOne) {
  const FactorizedInstance inst(Matrix{{1}, {2}}, {0, 0}, {0, 0},
                                SupportFamily::hypercube());
  const VertexSet vs = enumerate_vertices_factorized(inst);
  EXPECT_NEAR(vs.vertices[1].w(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(vs.vertices[3].w(0, 0), 1.0, 1e-15);
  EXPECT_EQ(vs.vertices[0].w(0, 0), 0.0);
}

TEST(EnumerateFactorizedTest, ProjectionsAreIdempotentWithBinarySpectrum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const int k = 1 + trial % 3;
    const FactorizedInstance inst(testing::random_matrix_of_rank(n, k, std::min(n, k), rng),
                                  Vector(n, 0.0), Vector(n, 0.0),
                                  SupportFamily::hypercube());
    for (const PolytopeVertex& v : enumerate_vertices_factorized(inst).vertices) {
      const Matrix w = v.w.dense();
      EXPECT_LE(max_abs_diff(w * w, w), 1e-8);
      for (double lam : eig_sym(v.w).values) {
        EXPECT_LE(std::min(std::abs(lam), std::abs(lam - 1)), 1e-7);
      }
    }
  }
}

TEST(TraceEqualitiesTest, HandComputedSingleton) {
  const MiqoInstance inst(SymmetricMatrix{{2, -1}, {-1, 3}}, {0, 0}, {0, 0},
                          SupportFamily::explicit_list({0b01}));
  const TraceReport r = verify_trace_equalities(inst.q(), enumerate_vertices(inst));
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_violation, 1e-15);
}

TEST(TraceEqualitiesTest, ZeroVertex) {
  const MiqoInstance inst(SymmetricMatrix{{2, -1}, {-1, 3}}, {0, 0}, {0, 0},
                          SupportFamily::explicit_list({0}));
  EXPECT_EQ(verify_trace_equalities(inst.q(), enumerate_vertices(inst))
                .max_violation,
            0.0);
}

TEST(TraceEqualitiesTest, PerturbationIsReportedLinearly) {
  const MiqoInstance inst(SymmetricMatrix{{2, -1}, {-1, 3}}, {0, 0}, {0, 0},
                          SupportFamily::explicit_list({0b01}));
  VertexSet vs = enumerate_vertices(inst);
  vs.vertices[0].w.set(0, 0, vs.vertices[0].w(0, 0) + 1e-3);
  const TraceReport r = verify_trace_equalities(inst.q(), vs);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_violation, 2e-3, 1e-12);
}

TEST(TraceEqualitiesTest, RandomInstancesAllSupports) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 10; ++n) {
    const SymmetricMatrix q = testing::random_pd(n, 0.3, rng);
    const MiqoInstance inst(q, Vector(n, 0.0), Vector(n, 0.0),
                            SupportFamily::hypercube());
    EXPECT_TRUE(verify_trace_equalities(q, enumerate_vertices(inst)).pass) << n;
  }
}

TEST(DimensionTest, DenseHypercube) {
  EXPECT_EQ(dimension_estimate(enumerate_vertices(bivariate(2, 3))), 3);
  const MiqoInstance three(SymmetricMatrix{{3, 1, 1}, {1, 3, 1}, {1, 1, 3}},
                           {0, 0, 0}, {0, 0, 0}, SupportFamily::hypercube());
  EXPECT_EQ(dimension_estimate(enumerate_vertices(three)), 6);
}

TEST(DimensionTest, SingleVertex) {
  const MiqoInstance inst(SymmetricMatrix::identity(2), {0, 0}, {0, 0},
                          SupportFamily::explicit_list({3}));
  EXPECT_EQ(dimension_estimate(enumerate_vertices(inst)), 0);
}

TEST(DimensionTest, NeverExceedsTriangularBound) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 5; ++n) {
    const MiqoInstance inst(testing::random_pd(n, 0.2, rng), Vector(n, 0.0),
                            Vector(n, 0.0), SupportFamily::hypercube());
    const int dim = dimension_estimate(enumerate_vertices(inst));
    EXPECT_EQ(dim, n * (n + 1) / 2) << n;
  }
}

TEST(LemmaOrderTest, PaddedInversesAreDominated) {
  std::mt19937_64 rng(29);
  for (int n = 1; n <= 8; ++n) {
    const SymmetricMatrix q = testing::random_pd(n, 0.2, rng);
    const SymmetricMatrix qinv = pseudoinverse(q);
    const double lam = max_eigenvalue(qinv);
    const MiqoInstance inst(q, Vector(n, 0.0), Vector(n, 0.0),
                            SupportFamily::hypercube());
    for (const PolytopeVertex& v : enumerate_vertices(inst).vertices) {
      EXPECT_GE(min_eigenvalue(qinv - v.w), -1e-8);
      EXPECT_LE(v.w.max_abs(), lam + 1e-9);
    }
  }
}

TEST(LinearObjectiveTest, VertexOptimumEqualsBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const SymmetricMatrix q = testing::random_pd(n, 0.2, rng);
    Vector a = testing::random_matrix(n, 1, rng).col(0);
    Vector b(n);
    for (int i = 0; i < n; ++i) b[i] = 0.1 * (rng() % 5);
    const MiqoInstance inst(q, a, b, SupportFamily::cardinality_at_most((n + 1) / 2));
    const SymmetricMatrix c = -0.5 * SymmetricMatrix::outer(a);
    double best = 1e300;
    for (const PolytopeVertex& v : enumerate_vertices(inst).vertices) {
      best = std::min(best, c.inner(v.w) + dot(b, v.z));
    }
    const double oracle = brute_force_solve(inst).value;
    EXPECT_NEAR(best, oracle, 1e-10 * (1 + std::abs(oracle)));
  }
}

TEST(TechnicalConditionTest, FullSupportMakesItHold) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const int k = 1 + trial % n;
    std::vector<std::uint64_t> masks = {(std::uint64_t{1} << n) - 1};
    for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
      if (rng() % 2) masks.push_back(m);
    }
    const FactorizedInstance inst(testing::random_matrix(n, k, rng),
                                  Vector(n, 0.0), Vector(n, 0.0),
                                  SupportFamily::explicit_list(masks));
    EXPECT_TRUE(check_technical_condition(inst)) << trial;
  }
}

TEST(TechnicalConditionTest, RankOneChooseOneFails) {
  for (int n = 2; n <= 4; ++n) {
    Matrix h(n, 1);
    for (int i = 0; i < n; ++i) h(i, 0) = 1.0 + i;
    const FactorizedInstance inst(h, Vector(n, 0.0), Vector(n, 0.0),
                                  SupportFamily::choose_one());
    EXPECT_FALSE(check_technical_condition(inst)) << n;
  }
}

TEST(TechnicalConditionTest, IdentityFactorAlwaysHolds) {
  const FactorizedInstance inst(Matrix::identity(3), Vector(3, 0.0),
                                Vector(3, 0.0), SupportFamily::choose_one());
  EXPECT_TRUE(check_technical_condition(inst));
}

TEST(TechnicalConditionTest, RankDeficientFactorRejected) {
  const FactorizedInstance inst(Matrix{{1, 2}, {2, 4}}, {0, 0}, {0, 0},
                                SupportFamily::hypercube());
  EXPECT_THROW(check_technical_condition(inst), Error);
}

}  // namespace
}  // namespace hullkit
