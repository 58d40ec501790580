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

#include <algorithm>
#include <cmath>
#include <string>

#include "hullkit/error.h"
#include "hullkit/hulls.h"
#include "hullkit/simplex.h"

namespace hullkit {

namespace {

// v^T Gamma_r v for every row.
std::vector<Term> psd_cut_terms(const FacetSystem& fs, const Vector& v) {
  std::vector<Term> terms;
  for (int r = 0; r < fs.rows(); ++r) {
    double c = fs.gammas[r].quadratic_form(v);
    if (std::abs(c) > 1e-14) terms.push_back({r, c});
  }
  return terms;
}

}  // namespace

std::optional<CutCoefficients> separate_cut(const FacetSystem& fs, const SolutionPoint& p,
                                            const SeparationOptions& opt) {
  const int m = fs.rows();
  if (static_cast<int>(p.x.size()) != fs.k || static_cast<int>(p.z.size()) != fs.n) {
    throw Error(ErrorCode::kDimensionMismatch, "point does not match the facet system");
  }
  const bool x_zero = norm_inf(p.x) == 0.0;
  if (p.t <= 0.0 && !x_zero) {
    throw Error(ErrorCode::kDegenerateT, "t <= 0 with x != 0 is cut off by t >= 0");
  }
  if (m == 0) return std::nullopt;

  // Maximize sum_r y_r c_r; the LP minimizes the negation.
  LinearModel lp;
  std::vector<Term> budget;
  for (int r = 0; r < m; ++r) {
    double c = -fs.betas[r] - dot(fs.gvecs[r], p.z);
    if (!x_zero) c += fs.gammas[r].quadratic_form(p.x) / p.t;
    lp.add_variable("y" + std::to_string(r), fs.equality[r] ? -opt.y_box : 0.0, opt.y_box);
    lp.set_objective(r, -c);
    double tr = fs.gammas[r].trace();
    if (tr != 0.0) budget.push_back({r, tr});
  }
  if (!budget.empty()) lp.add_constraint("budget", budget, Relation::kLessEqual, 1.0);
  // Diagonal entries of a PSD matrix are nonnegative.
  for (int i = 0; i < fs.k; ++i) {
    Vector e(fs.k, 0.0);
    e[i] = 1.0;
    auto terms = psd_cut_terms(fs, e);
    if (!terms.empty()) {
      lp.add_constraint("diag" + std::to_string(i), terms, Relation::kGreaterEqual, 0.0);
    }
  }

  for (int cuts = 0;; ++cuts) {
    LpSolution sol = simplex_solve(lp);
    if (sol.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kNumericalBreakdown,
                  std::string("separation LP ended ") + lp_status_name(sol.status));
    }
    const double value = -sol.value;
    if (value <= opt.violation_tol) return std::nullopt;
    Vector y = sol.primal;
    const double scale = std::max(1.0, norm_inf(y));
    EigenDecomposition eig = eig_sym(multiplier_matrix(fs, y));
    if (eig.values.empty() || eig.values[0] >= -opt.psd_tol) {
      for (double& v : y) v /= scale;
      // Rounding in the rescaled budget or signs is cleaned up here.
      for (int r = 0; r < m; ++r) {
        if (!fs.equality[r]) y[r] = std::max(0.0, y[r]);
      }
      return CutCoefficients{y};
    }
    if (cuts >= opt.max_cuts) {
      throw Error(ErrorCode::kNoConvergence, "separation did not reach a PSD multiplier");
    }
    lp.add_constraint("psd" + std::to_string(cuts), psd_cut_terms(fs, eig.vectors.col(0)),
                      Relation::kGreaterEqual, 0.0);
  }
}

}  // namespace hullkit
