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

// The base polytopes
//
//   P   = conv{ (1_S, Qhat_S^{-1})     : 1_S in Z }
//   P_F = conv{ (1_S, Fhat_S^+ Fhat_S) : 1_S in Z }
//
// where Fhat_S is F with the rows outside S zeroed.

#ifndef HULLKIT_POLYTOPE_H_
#define HULLKIT_POLYTOPE_H_

#include <cstdint>
#include <vector>

#include "hullkit/linalg.h"
#include "hullkit/model.h"

namespace hullkit {

struct PolytopeVertex {
  std::uint64_t mask = 0;
  Vector z;
  SymmetricMatrix w;
};

struct VertexSet {
  enum class Mode { kCanonical, kFactorized };
  Mode mode = Mode::kCanonical;
  int n = 0;  // length of z
  int k = 0;  // order of W
  std::vector<PolytopeVertex> vertices;  // sorted by mask
};

// Throws kSingularSubmatrix when some Q_S is not positive definite and
// kTooManySupports when Z is not enumerable.
VertexSet enumerate_vertices(const MiqoInstance& inst);
VertexSet enumerate_vertices_factorized(const FactorizedInstance& inst);

// Fhat_S^+ Fhat_S: orthogonal projection onto the row space of F_S.
SymmetricMatrix support_projection(const Matrix& f, const IndexSet& s);

struct TraceReport {
  std::vector<double> violations;  // per vertex, max_i |(W Q)_ii - z_i|
  double max_violation = 0.0;
  bool pass = true;
};

// Requires canonical mode (kInvalidParameters otherwise).
TraceReport verify_trace_equalities(const SymmetricMatrix& q,
                                    const VertexSet& vs, double tol = 1e-9);

// Vertex as a point of R^{n + k(k+1)/2}: z followed by the upper triangle of
// W in row-major order.
Vector vertex_coordinates(const PolytopeVertex& v);

// Affine rank of the vertex set.
int dimension_estimate(const VertexSet& vs);

// Basis of pi_S^{-1}(col F_S) = col(Fhat_S) + span{e_i : i not in S}.
Matrix support_preimage_basis(const Matrix& f, const IndexSet& s);

// col(F) == intersection over S in Z of the preimages above. Requires F of
// full column rank (kInvalidParameters) and n <= 24 (kTooManySupports).
bool check_technical_condition(const FactorizedInstance& inst);

}  // namespace hullkit

#endif  // HULLKIT_POLYTOPE_H_
