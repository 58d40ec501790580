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
#include <vector>

#include "hullkit/error.h"
#include "hullkit/hulls.h"

namespace hullkit {

namespace {

constexpr int kMaxAffineDimension = 10;
constexpr int kMaxDenominator = 720;
constexpr double kSnapTol = 1e-7;
constexpr double kRowTol = 1e-8;

double snap(double c) {
  if (std::abs(c) < 1e-12) return 0.0;
  for (int q = 1; q <= kMaxDenominator; ++q) {
    double p = std::round(c * q);
    if (std::abs(c - p / q) <= kSnapTol) return p / q;
  }
  return c;
}

// Coefficients over vertex_coordinates order (z, then W_ij for i <= j) into
// a facet row a^T c (<= or =) beta.
void emit_row(FacetSystem& fs, const Vector& a, double beta, bool equality) {
  SymmetricMatrix gamma(fs.k);
  Vector g(fs.n);
  for (int i = 0; i < fs.n; ++i) g[i] = a[i] == 0.0 ? 0.0 : -a[i];
  int col = fs.n;
  for (int i = 0; i < fs.k; ++i) {
    for (int j = i; j < fs.k; ++j, ++col) gamma.set(i, j, i == j ? a[col] : a[col] / 2.0);
  }
  fs.add_row(std::move(gamma), std::move(g), beta, equality);
}

double max_abs_residual(const std::vector<Vector>& pts, const Vector& a, double beta,
                        bool equality) {
  double worst = 0.0;
  for (const Vector& c : pts) {
    double r = dot(a, c) - beta;
    worst = std::max(worst, equality ? std::abs(r) : r);
  }
  return worst;
}

// Snaps a row when the snapped version still holds at every point.
void snap_row(const std::vector<Vector>& pts, Vector& a, double& beta, bool equality) {
  Vector sa = a;
  for (double& v : sa) v = snap(v);
  double sb = snap(beta);
  if (max_abs_residual(pts, sa, sb, equality) <= kRowTol) {
    a = std::move(sa);
    beta = sb;
  }
}

// Inverts a small square matrix by Gauss-Jordan with partial pivoting.
Matrix invert(Matrix a) {
  const int n = a.rows();
  Matrix inv = Matrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    }
    if (std::abs(a(piv, c)) < 1e-12) throw Error(ErrorCode::kNumericalBreakdown, "singular basis");
    for (int j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    double d = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0.0) continue;
      double f = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

struct Ray {
  Vector u;                // (u0, a): u0 + a^T p >= 0 for every point p
  std::vector<char> tight;  // per point, among those processed
};

void normalize(Vector& u) {
  double s = norm_inf(u);
  if (s > 0) {
    for (double& v : u) v /= s;
  }
}

double ray_value(const Ray& r, const Vector& p) {
  double v = r.u[0];
  for (size_t i = 0; i < p.size(); ++i) v += r.u[i + 1] * p[i];
  return v;
}

// Extreme rays of {u : u0 + a^T p_j >= 0 for all j} for points spanning R^d.
std::vector<Ray> double_description(const std::vector<Vector>& pts, int d) {
  const int v = static_cast<int>(pts.size());
  auto tol_for = [&](int j) { return 1e-9 * (1.0 + norm_inf(pts[j])); };

  // Greedy choice of d + 1 affinely independent points.
  std::vector<int> basis;
  for (int j = 0; j < v && static_cast<int>(basis.size()) < d + 1; ++j) {
    Matrix rows(static_cast<int>(basis.size()) + 1, d + 1);
    basis.push_back(j);
    for (int r = 0; r < rows.rows(); ++r) {
      rows(r, 0) = 1.0;
      for (int i = 0; i < d; ++i) rows(r, i + 1) = pts[basis[r]][i];
    }
    if (numerical_rank(rows) < rows.rows()) basis.pop_back();
  }
  if (static_cast<int>(basis.size()) != d + 1) {
    throw Error(ErrorCode::kNumericalBreakdown, "points do not span the affine hull");
  }
  Matrix a0(d + 1, d + 1);
  for (int r = 0; r <= d; ++r) {
    a0(r, 0) = 1.0;
    for (int i = 0; i < d; ++i) a0(r, i + 1) = pts[basis[r]][i];
  }
  Matrix inv = invert(a0);
  std::vector<char> processed(v, 0);
  for (int j : basis) processed[j] = 1;
  std::vector<Ray> rays;
  for (int c = 0; c <= d; ++c) {
    Ray r{inv.col(c), std::vector<char>(v, 0)};
    normalize(r.u);
    for (int j : basis) r.tight[j] = std::abs(ray_value(r, pts[j])) <= tol_for(j);
    rays.push_back(std::move(r));
  }

  for (int j = 0; j < v; ++j) {
    if (processed[j]) continue;
    const double tol = tol_for(j);
    std::vector<double> s(rays.size());
    std::vector<int> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      s[r] = ray_value(rays[r], pts[j]);
      if (s[r] > tol) {
        pos.push_back(static_cast<int>(r));
      } else if (s[r] < -tol) {
        neg.push_back(static_cast<int>(r));
      } else {
        rays[r].tight[j] = 1;
      }
    }
    processed[j] = 1;
    if (neg.empty()) continue;
    std::vector<Ray> next;
    for (size_t r = 0; r < rays.size(); ++r) {
      if (s[r] >= -tol) next.push_back(rays[r]);
    }
    for (int p : pos) {
      for (int q : neg) {
        std::vector<char> common(v, 0);
        int count = 0;
        for (int i = 0; i < v; ++i) {
          common[i] = rays[p].tight[i] && rays[q].tight[i];
          count += common[i];
        }
        if (count < d - 1) continue;
        bool adjacent = true;
        for (size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (static_cast<int>(o) == p || static_cast<int>(o) == q) continue;
          bool covers = true;
          for (int i = 0; i < v && covers; ++i) covers = !common[i] || rays[o].tight[i];
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{Vector(d + 1), common};
        for (int i = 0; i <= d; ++i) nr.u[i] = s[p] * rays[q].u[i] - s[q] * rays[p].u[i];
        normalize(nr.u);
        nr.tight[j] = 1;
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

FacetSystem facets_from_vertices(const VertexSet& vs) {
  if (vs.vertices.empty()) throw Error(ErrorCode::kInvalidParameters, "empty vertex set");
  FacetSystem fs;
  fs.n = vs.n;
  fs.k = vs.k;
  std::vector<Vector> pts;
  for (const PolytopeVertex& v : vs.vertices) pts.push_back(vertex_coordinates(v));
  const int dim = static_cast<int>(pts[0].size());

  // Pivot preference: diagonal W, then off-diagonal W, then z, so that the
  // remaining description reads in z and the off-diagonal entries.
  std::vector<int> order;
  {
    std::vector<int> diag, off;
    int col = vs.n;
    for (int i = 0; i < vs.k; ++i) {
      for (int j = i; j < vs.k; ++j, ++col) (i == j ? diag : off).push_back(col);
    }
    order = diag;
    order.insert(order.end(), off.begin(), off.end());
    for (int i = 0; i < vs.n; ++i) order.push_back(i);
  }

  Matrix normals;
  if (pts.size() == 1) {
    normals = Matrix::identity(dim);
  } else {
    Matrix diffs(static_cast<int>(pts.size()) - 1, dim);
    for (size_t j = 1; j < pts.size(); ++j) {
      for (int c = 0; c < dim; ++c) diffs(static_cast<int>(j) - 1, c) = pts[j][c] - pts[0][c];
    }
    normals = null_space_basis(diffs);
  }

  // Reduced row echelon form of the affine-hull normals.
  Matrix e = normals.transpose();
  std::vector<int> pivots;
  int rank = 0;
  for (int c : order) {
    if (rank == e.rows()) break;
    int piv = rank;
    for (int r = rank + 1; r < e.rows(); ++r) {
      if (std::abs(e(r, c)) > std::abs(e(piv, c))) piv = r;
    }
    if (std::abs(e(piv, c)) < 1e-9) continue;
    for (int j = 0; j < dim; ++j) std::swap(e(rank, j), e(piv, j));
    double d = e(rank, c);
    for (int j = 0; j < dim; ++j) e(rank, j) /= d;
    for (int r = 0; r < e.rows(); ++r) {
      if (r == rank || e(r, c) == 0.0) continue;
      double f = e(r, c);
      for (int j = 0; j < dim; ++j) e(r, j) -= f * e(rank, j);
    }
    pivots.push_back(c);
    ++rank;
  }

  std::vector<char> is_pivot(dim, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < dim; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  const int d = static_cast<int>(free_cols.size());
  if (d > kMaxAffineDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "affine dimension " + std::to_string(d) + " exceeds " +
                    std::to_string(kMaxAffineDimension));
  }

  std::vector<std::pair<Vector, double>> equalities;
  for (int r = 0; r < rank; ++r) {
    Vector a = e.row(r);
    for (int c : pivots) a[c] = (c == pivots[r]) ? 1.0 : 0.0;
    double beta = dot(a, pts[0]);
    snap_row(pts, a, beta, true);
    equalities.emplace_back(std::move(a), beta);
  }

  if (d > 0) {
    std::vector<Vector> reduced;
    for (const Vector& c : pts) {
      Vector p;
      for (int f : free_cols) p.push_back(c[f]);
      reduced.push_back(std::move(p));
    }
    std::vector<Vector> seen;
    for (const Ray& r : double_description(reduced, d)) {
      // u0 + a^T p >= 0 becomes -a^T p <= u0; scale by the smallest
      // nonzero coefficient before snapping.
      Vector a(dim, 0.0);
      double smallest = 0.0;
      for (int i = 0; i < d; ++i) {
        a[free_cols[i]] = -r.u[i + 1];
        double m = std::abs(r.u[i + 1]);
        if (m > 1e-9 && (smallest == 0.0 || m < smallest)) smallest = m;
      }
      if (smallest == 0.0) continue;  // 0 <= u0
      for (double& v : a) v /= smallest;
      double beta = r.u[0] / smallest;
      snap_row(pts, a, beta, false);
      Vector key = a;
      key.push_back(beta);
      normalize(key);
      bool dup = std::any_of(seen.begin(), seen.end(), [&](const Vector& s) {
        for (size_t i = 0; i < s.size(); ++i) {
          if (std::abs(s[i] - key[i]) > 1e-9) return false;
        }
        return true;
      });
      if (dup) continue;
      seen.push_back(std::move(key));
      emit_row(fs, a, beta, false);
    }
  }
  for (auto& [a, beta] : equalities) emit_row(fs, a, beta, true);
  return fs;
}

}  // namespace hullkit
