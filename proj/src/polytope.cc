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

#include <algorithm>
#include <cmath>

#include "hullkit/error.h"

namespace hullkit {

VertexSet enumerate_vertices(const MiqoInstance& inst) {
  const int n = inst.n();
  VertexSet vs;
  vs.mode = VertexSet::Mode::kCanonical;
  vs.n = n;
  vs.k = n;
  inst.support_family().for_each(n, [&](std::uint64_t mask) {
    const IndexSet s = IndexSet::from_mask(mask, n);
    vs.vertices.push_back(
        {mask, indicator(mask, n), padded_submatrix_inverse(inst.q(), s)});
  });
  return vs;
}

SymmetricMatrix support_projection(const Matrix& f, const IndexSet& s) {
  const int k = f.cols();
  SymmetricMatrix w(k);
  if (s.empty()) return w;
  Matrix fs(s.size(), k);
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < k; ++j) fs(i, j) = f(s.members()[i], j);
  }
  const Matrix p = pseudoinverse(fs) * fs;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) w.set(i, j, 0.5 * (p(i, j) + p(j, i)));
  }
  return w;
}

VertexSet enumerate_vertices_factorized(const FactorizedInstance& inst) {
  const int n = inst.n();
  VertexSet vs;
  vs.mode = VertexSet::Mode::kFactorized;
  vs.n = n;
  vs.k = inst.k();
  inst.support_family().for_each(n, [&](std::uint64_t mask) {
    vs.vertices.push_back(
        {mask, indicator(mask, n),
         support_projection(inst.f(), IndexSet::from_mask(mask, n))});
  });
  return vs;
}

TraceReport verify_trace_equalities(const SymmetricMatrix& q,
                                    const VertexSet& vs, double tol) {
  if (vs.mode != VertexSet::Mode::kCanonical) {
    throw Error(ErrorCode::kInvalidParameters,
                "trace equalities apply to the canonical polytope");
  }
  if (q.n() != vs.k) {
    throw Error(ErrorCode::kDimensionMismatch, "Q order differs from W");
  }
  TraceReport report;
  for (const PolytopeVertex& v : vs.vertices) {
    double worst = 0.0;
    for (int i = 0; i < q.n(); ++i) {
      double d = 0.0;
      for (int k = 0; k < q.n(); ++k) d += v.w(i, k) * q(k, i);
      worst = std::max(worst, std::abs(d - v.z[i]));
    }
    report.violations.push_back(worst);
    report.max_violation = std::max(report.max_violation, worst);
  }
  report.pass = report.max_violation <= tol;
  return report;
}

Vector vertex_coordinates(const PolytopeVertex& v) {
  Vector c = v.z;
  const int k = v.w.n();
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) c.push_back(v.w(i, j));
  }
  return c;
}

int dimension_estimate(const VertexSet& vs) {
  if (vs.vertices.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "empty vertex set");
  }
  if (vs.vertices.size() == 1) return 0;
  const Vector base = vertex_coordinates(vs.vertices.front());
  const int d = static_cast<int>(base.size());
  const int m = static_cast<int>(vs.vertices.size()) - 1;
  Matrix diffs(m, d);
  for (int r = 0; r < m; ++r) {
    const Vector c = vertex_coordinates(vs.vertices[r + 1]);
    for (int j = 0; j < d; ++j) diffs(r, j) = c[j] - base[j];
  }
  return numerical_rank(diffs);
}

Matrix support_preimage_basis(const Matrix& f, const IndexSet& s) {
  const int n = f.rows();
  const int k = f.cols();
  Matrix gen(n, k + n - s.size());
  for (int i : s.members()) {
    for (int j = 0; j < k; ++j) gen(i, j) = f(i, j);
  }
  int col = k;
  for (int i = 0; i < n; ++i) {
    if (!s.contains(i)) gen(i, col++) = 1.0;
  }
  return column_space_basis(gen);
}

bool check_technical_condition(const FactorizedInstance& inst) {
  const int n = inst.n();
  if (n > 24) {
    throw Error(ErrorCode::kTooManySupports,
                "technical condition check is limited to n <= 24");
  }
  if (!inst.full_column_rank()) {
    throw Error(ErrorCode::kInvalidParameters, "F must have full column rank");
  }
  // Every preimage contains col(F), so the running intersection can stop
  // shrinking once its dimension reaches k.
  Matrix current = Matrix::identity(n);
  inst.support_family().for_each(n, [&](std::uint64_t mask) {
    if (current.cols() == inst.k()) return;
    const Matrix pair[] = {
        current, support_preimage_basis(inst.f(), IndexSet::from_mask(mask, n))};
    current = subspace_intersection(pair);
  });
  return same_subspace(current, inst.f());
}

}  // namespace hullkit
