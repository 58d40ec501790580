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

#include "hullkit/hulls.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "hullkit/error.h"
#include "hullkit/simplex.h"

namespace hullkit {

namespace {

constexpr double kZeroTol = 1e-12;

void check_system(const FacetSystem& fs, const Vector& y) {
  if (static_cast<int>(y.size()) != fs.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "multiplier length " + std::to_string(y.size()) +
                                                   " for " + std::to_string(fs.rows()) + " rows");
  }
}

double safe_ratio(double num, double den) {
  if (std::abs(num) <= kZeroTol) return 0.0;
  if (den <= 0.0) return kInfinity;
  return num / den;
}

}  // namespace

int FacetSystem::inequality_rows() const {
  return static_cast<int>(std::count(equality.begin(), equality.end(), false));
}

void FacetSystem::add_row(SymmetricMatrix gamma, Vector g, double beta, bool is_equality) {
  if (gamma.n() != k || static_cast<int>(g.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "facet row shape");
  }
  gammas.push_back(std::move(gamma));
  gvecs.push_back(std::move(g));
  betas.push_back(beta);
  equality.push_back(is_equality);
}

double FacetSystem::residual(int i, const Vector& z, const SymmetricMatrix& w) const {
  return gammas[i].inner(w) - dot(gvecs[i], z) - betas[i];
}

double FacetSystem::max_violation(const Vector& z, const SymmetricMatrix& w) const {
  double worst = 0.0;
  for (int i = 0; i < rows(); ++i) {
    double r = residual(i, z, w);
    worst = std::max(worst, equality[i] ? std::abs(r) : r);
  }
  return worst;
}

std::string FacetSystem::describe() const {
  std::ostringstream os;
  os.precision(10);
  for (int r = 0; r < rows(); ++r) {
    bool first = true;
    auto term = [&](double c, const std::string& name) {
      if (std::abs(c) <= kZeroTol) return;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (std::abs(std::abs(c) - 1.0) > kZeroTol) os << std::abs(c) << " ";
      os << name;
      first = false;
    };
    for (int i = 0; i < k; ++i) {
      for (int j = i; j < k; ++j) {
        double c = (i == j ? 1.0 : 2.0) * gammas[r](i, j);
        term(c, "W" + std::to_string(i + 1) + std::to_string(j + 1));
      }
    }
    for (int i = 0; i < n; ++i) term(-gvecs[r][i], "z" + std::to_string(i + 1));
    if (first) os << "0";
    os << (equality[r] ? " = " : " <= ") << betas[r] << "\n";
  }
  return os.str();
}

FacetSystem hull_2x2_facets(double d1, double d2) {
  if (!(d1 > 0) || !(d2 > 0) || !(d1 * d2 > 1)) {
    throw Error(ErrorCode::kInvalidParameters, "need d1, d2 > 0 and d1 d2 > 1");
  }
  const double delta = d1 * d2 - 1.0;
  FacetSystem fs;
  fs.n = 2;
  fs.k = 2;
  fs.add_row(SymmetricMatrix{{1.0, -1.0 / (2 * d1)}, {-1.0 / (2 * d1), 0.0}}, {1.0 / d1, 0.0}, 0.0,
             true);
  fs.add_row(SymmetricMatrix{{0.0, -1.0 / (2 * d2)}, {-1.0 / (2 * d2), 1.0}}, {0.0, 1.0 / d2}, 0.0,
             true);
  SymmetricMatrix minus{{0.0, -0.5}, {-0.5, 0.0}};
  SymmetricMatrix plus{{0.0, 0.5}, {0.5, 0.0}};
  fs.add_row(minus, {0.0, 0.0}, 0.0, false);
  fs.add_row(minus, {-1.0 / delta, -1.0 / delta}, 1.0 / delta, false);
  fs.add_row(plus, {1.0 / delta, 0.0}, 0.0, false);
  fs.add_row(plus, {0.0, 1.0 / delta}, 0.0, false);
  return fs;
}

double eval_2x2_cut(double d1, double d2, const CutCoefficients& cut, const SolutionPoint& p) {
  if (!(d1 > 0) || !(d2 > 0) || !(d1 * d2 > 1)) {
    throw Error(ErrorCode::kInvalidParameters, "need d1, d2 > 0 and d1 d2 > 1");
  }
  const Vector& y = cut.y;
  if (y.size() != 6 || p.x.size() != 2 || p.z.size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "bivariate cut needs y in R^6 and x, z in R^2");
  }
  const double delta = d1 * d2 - 1.0;
  const double cross = -y[0] / d1 - y[1] / d2 - y[2] - y[3] + y[4] + y[5];
  const double tol = 1e-9;
  bool ok = std::all_of(y.begin(), y.end(), [&](double v) { return v >= -tol; }) &&
            4 * y[0] * y[1] >= cross * cross - tol && y[0] + y[1] <= 1 + tol;
  if (!ok) throw Error(ErrorCode::kInfeasibleMultipliers, "y outside the bivariate multiplier set");
  const double num = y[0] * p.x[0] * p.x[0] + y[1] * p.x[1] * p.x[1] + cross * p.x[0] * p.x[1];
  const double den = y[3] / delta + (y[0] / d1 - y[3] / delta + y[4] / delta) * p.z[0] +
                     (y[1] / d2 - y[3] / delta + y[5] / delta) * p.z[1];
  if (den < -tol) return -kInfinity;
  return p.t * den - num;
}

SymmetricMatrix multiplier_matrix(const FacetSystem& fs, const Vector& y) {
  check_system(fs, y);
  SymmetricMatrix m(fs.k);
  for (int r = 0; r < fs.rows(); ++r) {
    if (y[r] != 0.0) m = m + y[r] * fs.gammas[r];
  }
  return m;
}

double cut_denominator(const FacetSystem& fs, const Vector& y, const Vector& z) {
  check_system(fs, y);
  if (static_cast<int>(z.size()) != fs.n) throw Error(ErrorCode::kDimensionMismatch, "z length");
  double den = 0.0;
  for (int r = 0; r < fs.rows(); ++r) den += y[r] * (fs.betas[r] + dot(fs.gvecs[r], z));
  return den;
}

bool y_membership(const FacetSystem& fs, const Vector& y) {
  check_system(fs, y);
  double budget = 0.0;
  for (int r = 0; r < fs.rows(); ++r) {
    if (!fs.equality[r] && y[r] < 0.0) return false;
    budget += fs.gammas[r].trace() * y[r];
  }
  if (budget > 1.0 + 1e-9) return false;
  return fs.k == 0 || min_eigenvalue(multiplier_matrix(fs, y)) >= -1e-8;
}

namespace {

double projection_slack(const FacetSystem& fs, const CutCoefficients& cut,
                        const SolutionPoint& p, const Vector& u) {
  if (!y_membership(fs, cut.y)) {
    throw Error(ErrorCode::kInfeasibleMultipliers, "y is not in the multiplier set");
  }
  const double den = cut_denominator(fs, cut.y, p.z);
  if (den < -1e-9) return -kInfinity;
  return p.t * den - multiplier_matrix(fs, cut.y).quadratic_form(u);
}

}  // namespace

double eval_projection_cut(const FacetSystem& fs, const CutCoefficients& cut,
                           const SolutionPoint& p) {
  if (static_cast<int>(p.x.size()) != fs.k) throw Error(ErrorCode::kDimensionMismatch, "x length");
  return projection_slack(fs, cut, p, p.x);
}

double eval_projection_cut(const FacetSystem& fs, const Matrix& f, const CutCoefficients& cut,
                           const SolutionPoint& p) {
  if (f.cols() != fs.k || f.rows() != static_cast<int>(p.x.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "factor shape");
  }
  return projection_slack(fs, cut, p, f.transpose() * p.x);
}

double hull_rank_one_lowerbound(const Vector& h, const SolutionPoint& p) {
  if (h.size() != p.x.size() || h.size() != p.z.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "h, x and z lengths differ");
  }
  const double s = dot(h, p.x);
  double sz = 0.0;
  for (double v : p.z) sz += v;
  return safe_ratio(s * s, std::min(1.0, sz));
}

RankOneConstrainedHull::RankOneConstrainedHull(Vector h, std::vector<Vector> z_facets)
    : h_(std::move(h)), facets_(std::move(z_facets)) {
  for (const Vector& g : facets_) {
    if (g.size() != h_.size()) throw Error(ErrorCode::kDimensionMismatch, "facet length");
  }
}

int RankOneConstrainedHull::binding_facet(const Vector& z) const {
  int best = -1;
  double lowest = 1.0;
  for (int i = 0; i < static_cast<int>(facets_.size()); ++i) {
    double v = dot(facets_[i], z);
    if (v < lowest) {
      lowest = v;
      best = i;
    }
  }
  return best;
}

double RankOneConstrainedHull::required_t(const SolutionPoint& p) const {
  if (p.x.size() != h_.size() || p.z.size() != h_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "point length");
  }
  const double s = dot(h_, p.x);
  int i = binding_facet(p.z);
  return safe_ratio(s * s, i < 0 ? 1.0 : dot(facets_[i], p.z));
}

RankOneConstrainedHull hull_rank_one_constrained(const Vector& h,
                                                 const std::vector<Vector>& z_facets) {
  return RankOneConstrainedHull(h, z_facets);
}

double hull_choose_one_lowerbound(const SymmetricMatrix& q, const SolutionPoint& p) {
  const int n = q.n();
  if (static_cast<int>(p.x.size()) != n || static_cast<int>(p.z.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "point length");
  }
  double sz = 0.0;
  for (double v : p.z) {
    if (v < -1e-9) throw Error(ErrorCode::kInfeasibleZ, "negative z");
    sz += v;
  }
  if (sz > 1.0 + 1e-9) throw Error(ErrorCode::kInfeasibleZ, "sum of z exceeds 1");
  double t = 0.0;
  for (int i = 0; i < n; ++i) t += safe_ratio(q(i, i) * p.x[i] * p.x[i], p.z[i]);
  return t;
}

HullMinimum minimize_rank_one_hull(const Vector& h, const Vector& a, const Vector& b) {
  const int n = static_cast<int>(h.size());
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "h, a and b lengths differ");
  }
  const double hh = dot(h, h);
  if (hh <= 0.0) throw Error(ErrorCode::kInvalidParameters, "h is zero");
  const double alpha = dot(a, h) / hh;
  double off = 0.0;
  for (int i = 0; i < n; ++i) off = std::max(off, std::abs(a[i] - alpha * h[i]));
  if (off > 1e-9 * std::max(1.0, norm_inf(a))) {
    throw Error(ErrorCode::kInvalidParameters, "a is not a multiple of h; the problem is unbounded");
  }
  // Eliminating x leaves b^T z + (alpha^2 / 2) max(-1, -sum z).
  LinearModel lp;
  std::vector<Term> cover;
  for (int i = 0; i < n; ++i) {
    lp.add_variable("z" + std::to_string(i), 0.0, 1.0);
    lp.set_objective(i, b[i]);
    cover.push_back({i, 1.0});
  }
  int u = lp.add_variable("u", -1.0, kInfinity);
  lp.set_objective(u, 0.5 * alpha * alpha);
  cover.push_back({u, 1.0});
  lp.add_constraint("cover", cover, Relation::kGreaterEqual, 0.0);
  LpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalBreakdown, "rank-one hull LP did not solve");
  }
  HullMinimum out;
  out.point.z.assign(sol.primal.begin(), sol.primal.begin() + n);
  double m = 0.0;
  for (double v : out.point.z) m += v;
  m = std::min(1.0, m);
  out.point.x.assign(n, 0.0);
  for (int i = 0; i < n; ++i) out.point.x[i] = -alpha * m * h[i] / hh;
  out.point.t = hull_rank_one_lowerbound(h, out.point);
  out.value = dot(a, out.point.x) + dot(b, out.point.z) + 0.5 * out.point.t;
  return out;
}

HullMinimum minimize_choose_one_hull(const SymmetricMatrix& q, const Vector& a, const Vector& b) {
  const int n = q.n();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "Q, a and b sizes differ");
  }
  // For fixed z the optimal x_i is -a_i z_i / Q_ii, so the hull problem is
  // linear over the simplex.
  int pick = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(q(i, i) > 0)) throw Error(ErrorCode::kNotPositiveDefinite, "nonpositive diagonal");
    double c = b[i] - a[i] * a[i] / (2.0 * q(i, i));
    if (c < best) {
      best = c;
      pick = i;
    }
  }
  HullMinimum out;
  out.point.x.assign(n, 0.0);
  out.point.z.assign(n, 0.0);
  if (pick >= 0) {
    out.point.z[pick] = 1.0;
    out.point.x[pick] = -a[pick] / q(pick, pick);
  }
  out.point.t = hull_choose_one_lowerbound(q, out.point);
  out.value = dot(a, out.point.x) + dot(b, out.point.z) + 0.5 * out.point.t;
  return out;
}

GammaBound rank_one_gamma_bound(const SymmetricMatrix& q, const SupportFamily& z,
                                const IndexSet& t, const Vector& h_t) {
  const int n = q.n();
  if (t.universe() != n) throw Error(ErrorCode::kDimensionMismatch, "T universe");
  Vector h(n, 0.0);
  if (static_cast<int>(h_t.size()) == n) {
    for (int i = 0; i < n; ++i) {
      if (h_t[i] != 0.0 && !t.contains(i)) {
        throw Error(ErrorCode::kInvalidParameters, "h_T not supported on T");
      }
      h[i] = h_t[i];
    }
  } else if (static_cast<int>(h_t.size()) == t.size()) {
    for (int j = 0; j < t.size(); ++j) h[t.members()[j]] = h_t[j];
  } else {
    throw Error(ErrorCode::kDimensionMismatch, "h_T length");
  }
  z.validate(n);
  if (z.count(n) > (std::uint64_t{1} << 20)) {
    throw Error(ErrorCode::kTooManySupports, "support family too large to enumerate");
  }
  const std::uint64_t tmask = t.mask();
  GammaBound out;
  bool found = false;
  for (std::uint64_t s : z.enumerate(n)) {
    int common = std::popcount(s & tmask);
    if (common == 0) continue;
    double v = padded_submatrix_inverse(q, IndexSet::from_mask(s, n)).quadratic_form(h) / common;
    if (!found || v > out.gamma || (v == out.gamma && s < out.argmax)) {
      out.gamma = v;
      out.argmax = s;
      found = true;
    }
  }
  return out;
}

LinearModel facet_system_model(const FacetSystem& fs, bool unit_box) {
  LinearModel lp;
  for (int i = 0; i < fs.n; ++i) {
    lp.add_variable("z" + std::to_string(i + 1), unit_box ? 0.0 : -kInfinity,
                    unit_box ? 1.0 : kInfinity);
  }
  for (int i = 0; i < fs.k; ++i) {
    for (int j = i; j < fs.k; ++j) {
      lp.add_variable("W" + std::to_string(i + 1) + "_" + std::to_string(j + 1), -kInfinity,
                      kInfinity);
    }
  }
  for (int r = 0; r < fs.rows(); ++r) {
    std::vector<Term> terms;
    for (int i = 0; i < fs.n; ++i) {
      if (fs.gvecs[r][i] != 0.0) terms.push_back({i, -fs.gvecs[r][i]});
    }
    int col = fs.n;
    for (int i = 0; i < fs.k; ++i) {
      for (int j = i; j < fs.k; ++j, ++col) {
        double c = (i == j ? 1.0 : 2.0) * fs.gammas[r](i, j);
        if (c != 0.0) terms.push_back({col, c});
      }
    }
    lp.add_constraint("f" + std::to_string(r), terms,
                      fs.equality[r] ? Relation::kEqual : Relation::kLessEqual, fs.betas[r]);
  }
  return lp;
}

bool mccormick_check_2x2(double d1, double d2) {
  const FacetSystem fs = hull_2x2_facets(d1, d2);
  const double delta = d1 * d2 - 1.0;
  const LinearModel hull = facet_system_model(fs, true);

  // Same coordinates (z1, z2, W11, W12, W22) plus the bilinear term w.
  LinearModel mc;
  for (int i = 0; i < 2; ++i) mc.add_variable("z" + std::to_string(i + 1), 0.0, 1.0);
  for (const char* name : {"W11", "W12", "W22", "w"}) mc.add_variable(name, -kInfinity, kInfinity);
  mc.add_constraint("w11", {{2, 1.0}, {0, -1.0 / d1}, {5, -1.0 / d1}}, Relation::kEqual, 0.0);
  mc.add_constraint("w12", {{3, 1.0}, {5, -1.0}}, Relation::kEqual, 0.0);
  mc.add_constraint("w22", {{4, 1.0}, {1, -1.0 / d2}, {5, -1.0 / d2}}, Relation::kEqual, 0.0);
  mc.add_constraint("lo0", {{5, delta}}, Relation::kGreaterEqual, 0.0);
  mc.add_constraint("lo1", {{5, delta}, {0, -1.0}, {1, -1.0}}, Relation::kGreaterEqual, -1.0);
  mc.add_constraint("up1", {{5, delta}, {0, -1.0}}, Relation::kLessEqual, 0.0);
  mc.add_constraint("up2", {{5, delta}, {1, -1.0}}, Relation::kLessEqual, 0.0);

  const double tol = 1e-8;
  auto in_hull = [&](const Vector& v) {
    return hull.max_violation(Vector(v.begin(), v.begin() + 5)) <= tol;
  };
  auto in_mc = [&](const Vector& v) {
    Vector full(v.begin(), v.begin() + 5);
    full.push_back(v[3]);
    return mc.max_violation(full) <= tol;
  };

  // Vertices of P are the lifted supports; vertices of the McCormick set sit
  // over the corners of the unit square where its w bounds coincide.
  for (int mask = 0; mask < 4; ++mask) {
    double z1 = mask & 1, z2 = (mask >> 1) & 1;
    double w = (z1 * z2) / delta;
    Vector v{z1, z2, (z1 + w) / d1, w, (z2 + w) / d2};
    if (!in_hull(v) || !in_mc(v)) return false;
  }

  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    LinearModel a = hull, b = mc;
    for (int j = 0; j < 5; ++j) {
      double c = g(rng);
      a.set_objective(j, c);
      b.set_objective(j, c);
    }
    LpSolution sa = simplex_solve(a), sb = simplex_solve(b);
    if (sa.status != LpStatus::kOptimal || sb.status != LpStatus::kOptimal) return false;
    if (std::abs(sa.value - sb.value) > tol * std::max(1.0, std::abs(sa.value))) return false;
    if (!in_mc(sa.primal) || !in_hull(sb.primal)) return false;
  }
  return true;
}

}  // namespace hullkit
