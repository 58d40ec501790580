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

#include "hullkit/formulations.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hullkit/error.h"

namespace hullkit {

namespace {

std::string idx(int i) { return std::to_string(i); }

void add_support_rows(const MiqoInstance& inst, LinearModel& model) {
  const int n = inst.n();
  const SupportFamily& z = inst.support_family();
  std::vector<Term> all;
  for (int i = 0; i < n; ++i) all.push_back({milo_z_index(n, i), 1.0});
  switch (z.kind()) {
    case SupportFamily::Kind::kHypercube:
      return;
    case SupportFamily::Kind::kCardinalityAtMost:
    case SupportFamily::Kind::kChooseOne:
      model.add_constraint("card", all, Relation::kLessEqual, z.cardinality(n));
      return;
    case SupportFamily::Kind::kExplicitList: {
      const std::uint64_t total = n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n;
      if (n >= 63 || total - z.masks().size() > 64) {
        throw Error(ErrorCode::kUnsupportedSupportFamily,
                    "explicit list complement exceeds 64 masks");
      }
      // sum_{i in m} (1 - z_i) + sum_{i not in m} z_i >= 1 removes mask m.
      for (std::uint64_t m = 0; m < total; ++m) {
        if (z.contains(m)) continue;
        std::vector<Term> row;
        for (int i = 0; i < n; ++i) {
          row.push_back({milo_z_index(n, i), (m >> i) & 1 ? -1.0 : 1.0});
        }
        model.add_constraint("nogood_" + std::to_string(m), row,
                             Relation::kGreaterEqual, 1.0 - std::popcount(m));
      }
      return;
    }
  }
}

}  // namespace

BigMData big_m_constants(const SymmetricMatrix& q) {
  cholesky(q);
  BigMData d;
  d.lambda_max_inv = 1.0 / min_eigenvalue(q);
  for (int i = 0; i < q.n(); ++i) {
    double s = 0.0;
    for (int j = 0; j < q.n(); ++j) s += q(i, j) * q(i, j);
    d.max_row_norm = std::max(d.max_row_norm, std::sqrt(s));
  }
  d.m = d.lambda_max_inv * d.max_row_norm;
  return d;
}

int milo_num_variables(int n) { return n + n * (n + 1) / 2; }

Vector milo_point(const Vector& z, const SymmetricMatrix& w) {
  const int n = w.n();
  if (static_cast<int>(z.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "z and W sizes differ");
  }
  Vector x(milo_num_variables(n));
  for (int i = 0; i < n; ++i) x[milo_z_index(n, i)] = z[i];
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) x[milo_w_index(n, i, j)] = w(i, j);
  }
  return x;
}

SymmetricMatrix milo_w(const Vector& x, int n) {
  if (static_cast<int>(x.size()) < milo_num_variables(n)) {
    throw Error(ErrorCode::kDimensionMismatch, "point too short for MILO");
  }
  SymmetricMatrix w(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) w.set(i, j, x[milo_w_index(n, i, j)]);
  }
  return w;
}

LinearModel build_milo(const MiqoInstance& inst) {
  const int n = inst.n();
  const SymmetricMatrix& q = inst.q();
  const BigMData big_m = big_m_constants(q);
  const double lambda = big_m.lambda_max_inv;
  const double m = big_m.m;

  LinearModel model;
  for (int i = 0; i < n; ++i) model.add_variable("z_" + idx(i), 0.0, 1.0, true);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      model.add_variable("w_" + idx(i) + "_" + idx(j), -kInfinity, kInfinity);
    }
  }

  // (QW)_ij = sum_k Q_ik W_kj.
  auto qw_terms = [&](int i, int j, double sign) {
    std::vector<Term> row;
    for (int k = 0; k < n; ++k) {
      if (q(i, k) != 0.0) row.push_back({milo_w_index(n, k, j), sign * q(i, k)});
    }
    return row;
  };

  for (int i = 0; i < n; ++i) {
    std::vector<Term> row = qw_terms(i, i, 1.0);
    row.push_back({milo_z_index(n, i), -1.0});
    model.add_constraint("trace_" + idx(i), std::move(row), Relation::kEqual, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::string tag = idx(i) + "_" + idx(j);
      for (double sign : {1.0, -1.0}) {
        std::vector<Term> row = qw_terms(i, j, sign);
        row.push_back({milo_z_index(n, i), m});
        model.add_constraint("bigm_" + tag + (sign > 0 ? "_up" : "_lo"),
                             std::move(row), Relation::kLessEqual, m);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int w = milo_w_index(n, i, j);
      const std::string tag = idx(i) + "_" + idx(j);
      for (double sign : {1.0, -1.0}) {
        const std::string side = sign > 0 ? "p" : "n";
        model.add_constraint("wabs_" + tag + "_" + side + "z" + idx(i),
                             {{w, sign}, {milo_z_index(n, i), -lambda}},
                             Relation::kLessEqual, 0.0);
        if (i != j) {
          model.add_constraint("wabs_" + tag + "_" + side + "z" + idx(j),
                               {{w, sign}, {milo_z_index(n, j), -lambda}},
                               Relation::kLessEqual, 0.0);
        }
      }
    }
  }
  add_support_rows(inst, model);

  const Vector& a = inst.a();
  for (int i = 0; i < n; ++i) {
    model.set_objective(milo_z_index(n, i), inst.b()[i]);
    model.set_objective(milo_w_index(n, i, i), -0.5 * a[i] * a[i]);
    for (int j = i + 1; j < n; ++j) {
      model.set_objective(milo_w_index(n, i, j), -a[i] * a[j]);
    }
  }
  model.set_objective_constant(inst.offset());
  return model;
}

LinearModel relax(const LinearModel& model) {
  LinearModel out = model;
  for (int j = 0; j < out.num_variables(); ++j) out.set_integer(j, false);
  return out;
}

Vector natural_bound_heuristic(const MiqoInstance& inst) {
  const Vector x = cholesky(inst.q()).solve(inst.a());
  return Vector(inst.n(), 5.0 * norm_inf(x));
}

double perspective_delta(const SymmetricMatrix& q) {
  if (q.n() == 0) return 0.0;
  return std::max(0.0, min_eigenvalue(q));
}

ConvexBaselineSpec ConvexBaselineSpec::natural(Vector bounds) {
  for (double m : bounds) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw Error(ErrorCode::kInvalidParameters, "natural bounds must be positive");
    }
  }
  ConvexBaselineSpec s;
  s.kind = Kind::kNatural;
  s.bounds = std::move(bounds);
  return s;
}

ConvexBaselineSpec ConvexBaselineSpec::perspective(double delta,
                                                   const SymmetricMatrix& q) {
  if (!(delta >= 0.0) || delta > perspective_delta(q) + 1e-9) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in [0, lambda_min(Q)]");
  }
  ConvexBaselineSpec s;
  s.kind = Kind::kPerspective;
  s.delta = delta;
  return s;
}

}  // namespace hullkit
