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

// Closed-form hulls for special structures, facet systems for P, the
// multiplier spectrahedron Y and the original-space cuts it generates.

#ifndef HULLKIT_HULLS_H_
#define HULLKIT_HULLS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullkit/linalg.h"
#include "hullkit/linear_model.h"
#include "hullkit/model.h"
#include "hullkit/polytope.h"

namespace hullkit {

// Rows <Gamma_i, W> - gamma_i^T z (<= or =) beta_i over z in R^n and a
// symmetric k x k matrix W.
struct FacetSystem {
  int n = 0;
  int k = 0;
  std::vector<SymmetricMatrix> gammas;
  std::vector<Vector> gvecs;
  Vector betas;
  std::vector<bool> equality;

  int rows() const { return static_cast<int>(betas.size()); }
  int inequality_rows() const;  // m1
  void add_row(SymmetricMatrix gamma, Vector g, double beta, bool is_equality);
  // <Gamma_i, W> - gamma_i^T z - beta_i.
  double residual(int i, const Vector& z, const SymmetricMatrix& w) const;
  // Largest violation over all rows; equalities count both ways.
  double max_violation(const Vector& z, const SymmetricMatrix& w) const;
  // Readable listing, one row per line, in terms of z_i and W_ij.
  std::string describe() const;
};

struct CutCoefficients {
  Vector y;
};

// The six rows of the bivariate example with Delta = d1 d2 - 1, in printed
// order: two equalities, then four inequalities on W_12.
FacetSystem hull_2x2_facets(double d1, double d2);

// t * den - num of the closed-form bivariate cut. Throws
// kInfeasibleMultipliers unless y >= 0, 4 y1 y2 >= (...)^2 and y1 + y2 <= 1.
double eval_2x2_cut(double d1, double d2, const CutCoefficients& y, const SolutionPoint& p);

// Sign, PSD (min eigenvalue >= -1e-8) and trace-budget test for y in Y.
bool y_membership(const FacetSystem& fs, const Vector& y);

SymmetricMatrix multiplier_matrix(const FacetSystem& fs, const Vector& y);
// y^T beta + (sum_i y_i gamma_i)^T z.
double cut_denominator(const FacetSystem& fs, const Vector& y, const Vector& z);

// Slack t * den - x^T (sum y_i Gamma_i) x, with x in W-space (length k). A
// denominator below -1e-9 yields -inf. Throws kInfeasibleMultipliers when
// y is not in Y.
double eval_projection_cut(const FacetSystem& fs, const CutCoefficients& y,
                           const SolutionPoint& p);
// Factorized form: the numerator is x^T F (sum y_i Gamma_i) F^T x for an
// n x k factor F and x of length n.
double eval_projection_cut(const FacetSystem& fs, const Matrix& f, const CutCoefficients& y,
                           const SolutionPoint& p);

struct SeparationOptions {
  int max_cuts = 200;
  double psd_tol = 1e-8;
  double violation_tol = 1e-8;
  double y_box = 1e4;  // |y_i| cap keeping the outer LPs bounded
};

// Maximizes sum_i y_i (-beta_i - gamma_i^T z + <Gamma_i, x x^T / t>) over Y by
// eigenvector cutting planes. Returns y when the optimum exceeds the
// violation tolerance. x is in W-space. Throws kDegenerateT for t <= 0 with
// x != 0 and kNoConvergence after max_cuts rounds.
std::optional<CutCoefficients> separate_cut(const FacetSystem& fs, const SolutionPoint& p,
                                            const SeparationOptions& opt = {});

// (h^T x)^2 / min{1, sum z}, with 0/0 = 0 and c/0 = +inf.
double hull_rank_one_lowerbound(const Vector& h, const SolutionPoint& p);

// t >= (h^T x)^2 / min(1, min_i gamma_i^T z) for facets gamma_i^T z >= 1 of
// conv(Z \ {0}).
class RankOneConstrainedHull {
 public:
  RankOneConstrainedHull(Vector h, std::vector<Vector> z_facets);
  double required_t(const SolutionPoint& p) const;
  // Index of the binding facet, or -1 when t >= (h^T x)^2 binds.
  int binding_facet(const Vector& z) const;

 private:
  Vector h_;
  std::vector<Vector> facets_;
};

RankOneConstrainedHull hull_rank_one_constrained(const Vector& h,
                                                 const std::vector<Vector>& z_facets);

// sum_i Q_ii x_i^2 / z_i. Throws kInfeasibleZ unless z >= 0 and sum z <= 1 + 1e-9.
double hull_choose_one_lowerbound(const SymmetricMatrix& q, const SolutionPoint& p);

struct HullMinimum {
  double value = 0.0;
  SolutionPoint point;
};

// min a^T x + b^T z + t/2 over the rank-one hull with z in [0,1]^n. Needs
// a = alpha h; otherwise throws kInvalidParameters (the problem is unbounded).
HullMinimum minimize_rank_one_hull(const Vector& h, const Vector& a, const Vector& b);
// Same objective over the choose-one hull.
HullMinimum minimize_choose_one_hull(const SymmetricMatrix& q, const Vector& a, const Vector& b);

struct GammaBound {
  double gamma = 0.0;
  std::uint64_t argmax = 0;  // S*, smallest mask among ties
};

// max over S in Z with S & T nonempty of h_T^T Qhat_S^{-1} h_T / |S & T|.
GammaBound rank_one_gamma_bound(const SymmetricMatrix& q, const SupportFamily& z,
                                const IndexSet& t, const Vector& h_t);

// Hull description of a vertex set: equalities for the affine hull, then
// facets by double description in affine-hull coordinates. Throws
// kDimensionTooLarge when the affine dimension exceeds 10.
FacetSystem facets_from_vertices(const VertexSet& vs);

// LP over (z, W) with the rows of fs; W_ij for i <= j in row-major order
// after z. `unit_box` adds 0 <= z <= 1.
LinearModel facet_system_model(const FacetSystem& fs, bool unit_box);

// Compares the bivariate hull with the McCormick form of the same matrix
// parametrization by vertex containment and 50 random LP objectives.
bool mccormick_check_2x2(double d1, double d2);

}  // namespace hullkit

#endif  // HULLKIT_HULLS_H_
