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

#include "hullkit/linalg.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hullkit/error.h"

namespace hullkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingularSubmatrix: return "SingularSubmatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooManySupports: return "TooManySupports";
    case ErrorCode::kUnsupportedSupportFamily: return "UnsupportedSupportFamily";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kInfeasibleMultipliers: return "InfeasibleMultipliers";
    case ErrorCode::kDegenerateT: return "DegenerateT";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kUnsupportedSign: return "UnsupportedSign";
    case ErrorCode::kInfeasibleZ: return "InfeasibleZ";
  }
  return "Unknown";
}

const Tolerances& default_tolerances() {
  static const Tolerances kDefaults;
  return kDefaults;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {
  if (rows < 0 || cols < 0) {
    throw Error(ErrorCode::kInvalidParameters, "negative matrix dimension");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(const Vector& v) {
  Matrix m(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

Matrix Matrix::from_rows(int rows, int cols, std::span<const double> data) {
  if (static_cast<size_t>(rows) * cols != data.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "data size does not match shape");
  }
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data_.begin());
  return m;
}

Vector Matrix::col(int j) const {
  Vector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(int i) const {
  return Vector(data_.begin() + static_cast<ptrdiff_t>(i) * cols_,
                data_.begin() + static_cast<ptrdiff_t>(i + 1) * cols_);
}

void Matrix::set_col(int j, const Vector& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix product shapes");
  }
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum shapes");
  }
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  }
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-1.0) * b; }

Matrix operator*(double s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != static_cast<int>(x.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector shapes");
  }
  Vector y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dot product lengths");
  }
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

// -------------------------------------------------------- SymmetricMatrix

SymmetricMatrix::SymmetricMatrix(int n) : m_(n, n) {}

SymmetricMatrix::SymmetricMatrix(const Matrix& m) : m_(m.rows(), m.cols()) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidParameters, "symmetric matrix must be square");
  }
  if (!m.all_finite()) {
    throw Error(ErrorCode::kInvalidParameters, "non-finite matrix entry");
  }
  const double scale = 1e-12 * (1.0 + m.max_abs());
  for (int i = 0; i < m.rows(); ++i) {
    m_(i, i) = m(i, i);
    for (int j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > scale) {
        throw Error(ErrorCode::kInvalidParameters,
                    "matrix is not symmetric at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
      }
      const double v = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
}

SymmetricMatrix::SymmetricMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : SymmetricMatrix(Matrix(rows)) {}

SymmetricMatrix SymmetricMatrix::identity(int n) {
  SymmetricMatrix s(n);
  for (int i = 0; i < n; ++i) s.m_(i, i) = 1.0;
  return s;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Vector& d) {
  SymmetricMatrix s(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) {
    s.m_(static_cast<int>(i), static_cast<int>(i)) = d[i];
  }
  return s;
}

SymmetricMatrix SymmetricMatrix::outer(const Vector& a) {
  const int n = static_cast<int>(a.size());
  SymmetricMatrix s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.m_(i, j) = a[i] * a[j];
  }
  return s;
}

void SymmetricMatrix::set(int i, int j, double v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n(); ++i) t += m_(i, i);
  return t;
}

double SymmetricMatrix::inner(const SymmetricMatrix& other) const {
  if (other.n() != n()) {
    throw Error(ErrorCode::kDimensionMismatch, "inner product shapes");
  }
  double s = 0.0;
  for (int i = 0; i < n(); ++i) {
    for (int j = 0; j < n(); ++j) s += m_(i, j) * other.m_(i, j);
  }
  return s;
}

double SymmetricMatrix::quadratic_form(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n()) {
    throw Error(ErrorCode::kDimensionMismatch, "quadratic form length");
  }
  double s = 0.0;
  for (int i = 0; i < n(); ++i) {
    double r = 0.0;
    for (int j = 0; j < n(); ++j) r += m_(i, j) * x[j];
    s += x[i] * r;
  }
  return s;
}

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix(a.dense() + b.dense());
}

SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix(a.dense() - b.dense());
}

SymmetricMatrix operator*(double s, const SymmetricMatrix& a) {
  return SymmetricMatrix(s * a.dense());
}

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::vector<int> members, int universe)
    : members_(std::move(members)), universe_(universe) {
  std::sort(members_.begin(), members_.end());
  for (size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= universe_) {
      throw Error(ErrorCode::kInvalidParameters, "index out of range");
    }
    if (i > 0 && members_[i] == members_[i - 1]) {
      throw Error(ErrorCode::kInvalidParameters, "duplicate index");
    }
  }
}

IndexSet IndexSet::from_mask(std::uint64_t mask, int universe) {
  std::vector<int> m;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    m.push_back(i);
    mask &= mask - 1;
  }
  return IndexSet(std::move(m), universe);
}

IndexSet IndexSet::all(int universe) {
  std::vector<int> m(universe);
  std::iota(m.begin(), m.end(), 0);
  return IndexSet(std::move(m), universe);
}

std::uint64_t IndexSet::mask() const {
  std::uint64_t m = 0;
  for (int i : members_) m |= std::uint64_t{1} << i;
  return m;
}

bool IndexSet::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

// ---------------------------------------------------------------- Cholesky

Vector LowerTriangularFactor::solve(const Vector& b) const {
  const int n = l_.rows();
  if (static_cast<int>(b.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "cholesky solve length");
  }
  Vector y(b);
  for (int i = 0; i < n; ++i) {
    double s = y[i];
    for (int k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= l_(k, i) * y[k];
    y[i] = s / l_(i, i);
  }
  return y;
}

SymmetricMatrix LowerTriangularFactor::inverse() const {
  const int n = l_.rows();
  SymmetricMatrix inv(n);
  Vector e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const Vector c = solve(e);
    for (int i = 0; i <= j; ++i) inv.set(i, j, c[i]);
  }
  return inv;
}

LowerTriangularFactor cholesky(const SymmetricMatrix& a, const Tolerances& tol) {
  const int n = a.n();
  const double threshold = tol.cholesky_pivot * a.max_abs();
  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > threshold)) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "pivot " + std::to_string(j) + " is " + std::to_string(d));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return LowerTriangularFactor(std::move(l));
}

// ------------------------------------------------------------ eigensolver

EigenDecomposition eig_sym(const SymmetricMatrix& a_in, const Tolerances& tol) {
  const int n = a_in.n();
  Matrix a = a_in.dense();
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius();
  const double target = tol.jacobi_offdiag * scale;

  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > target) {
    if (sweep++ >= tol.jacobi_max_sweeps) {
      throw Error(ErrorCode::kNoConvergence,
                  "Jacobi eigensolver exceeded sweep cap");
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue(const SymmetricMatrix& a) {
  if (a.n() == 0) return 0.0;
  return eig_sym(a).values.front();
}

double max_eigenvalue(const SymmetricMatrix& a) {
  if (a.n() == 0) return 0.0;
  return eig_sym(a).values.back();
}

// -------------------------------------------------------------------- SVD

SingularValueDecomposition svd(const Matrix& a, const Tolerances& tol) {
  const int m = a.rows();
  const int n = a.cols();
  // Work on columns stored contiguously.
  std::vector<Vector> u(n, Vector(m));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) u[j][i] = a(i, j);
  }
  std::vector<Vector> v(n, Vector(n, 0.0));
  for (int j = 0; j < n; ++j) v[j][j] = 1.0;

  const double orthogonality =
      std::max(1e-15, m * std::numeric_limits<double>::epsilon());
  // Columns below this squared norm are rounding noise; rotating them
  // against each other need not converge.
  const double negligible = std::pow(1e-17 * a.frobenius(), 2);
  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep++ >= tol.jacobi_max_sweeps) {
      throw Error(ErrorCode::kNoConvergence, "one-sided Jacobi SVD sweep cap");
    }
    rotated = false;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < m; ++i) {
          alpha += u[p][i] * u[p][i];
          beta += u[q][i] * u[q][i];
          gamma += u[p][i] * u[q][i];
        }
        if (gamma == 0.0 || std::min(alpha, beta) <= negligible ||
            std::abs(gamma) <= orthogonality * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double up = u[p][i];
          const double uq = u[q][i];
          u[p][i] = c * up - s * uq;
          u[q][i] = s * up + c * uq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v[p][i];
          const double vq = v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
  }

  Vector sigma(n);
  for (int j = 0; j < n; ++j) sigma[j] = norm2(u[j]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma[i] > sigma[j]; });

  SingularValueDecomposition out{Matrix(m, n), Vector(n), Matrix(n, n)};
  for (int k = 0; k < n; ++k) {
    const int j = order[k];
    out.sigma[k] = sigma[j];
    for (int i = 0; i < n; ++i) out.v(i, k) = v[j][i];
    if (sigma[j] > 0.0) {
      for (int i = 0; i < m; ++i) out.u(i, k) = u[j][i] / sigma[j];
    }
  }
  return out;
}

double rank_threshold(double sigma_max, const Tolerances& tol) {
  return std::max(tol.rank_relative * sigma_max, tol.rank_floor);
}

int numerical_rank(const Matrix& a, const Tolerances& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  // Factor the thinner orientation; singular values are the same.
  const SingularValueDecomposition d =
      a.rows() < a.cols() ? svd(a.transpose(), tol) : svd(a, tol);
  if (d.sigma.empty()) return 0;
  const double cut = rank_threshold(d.sigma.front(), tol);
  return static_cast<int>(std::count_if(d.sigma.begin(), d.sigma.end(),
                                        [&](double s) { return s > cut; }));
}

Matrix pseudoinverse(const Matrix& a, const Tolerances& tol) {
  const int m = a.rows();
  const int n = a.cols();
  Matrix out(n, m);
  if (m == 0 || n == 0) return out;
  const bool flip = m < n;
  const SingularValueDecomposition d = flip ? svd(a.transpose(), tol) : svd(a, tol);
  const double cut = rank_threshold(d.sigma.front(), tol);
  // a = U S V^T (or a^T = U S V^T when flipped).
  // a^+ = V S^+ U^T, and for the flipped case a^+ = U S^+ V^T.
  for (size_t k = 0; k < d.sigma.size(); ++k) {
    if (d.sigma[k] <= cut) continue;
    const double inv = 1.0 / d.sigma[k];
    const int kk = static_cast<int>(k);
    for (int i = 0; i < n; ++i) {
      const double left = flip ? d.u(i, kk) : d.v(i, kk);
      if (left == 0.0) continue;
      for (int j = 0; j < m; ++j) {
        const double right = flip ? d.v(j, kk) : d.u(j, kk);
        out(i, j) += left * inv * right;
      }
    }
  }
  return out;
}

SymmetricMatrix pseudoinverse(const SymmetricMatrix& a, const Tolerances& tol) {
  const int n = a.n();
  SymmetricMatrix out(n);
  if (n == 0) return out;
  const EigenDecomposition e = eig_sym(a, tol);
  double smax = 0.0;
  for (double v : e.values) smax = std::max(smax, std::abs(v));
  const double cut = rank_threshold(smax, tol);
  Matrix acc(n, n);
  for (int k = 0; k < n; ++k) {
    if (std::abs(e.values[k]) <= cut) continue;
    const double inv = 1.0 / e.values[k];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        acc(i, j) += e.vectors(i, k) * inv * e.vectors(j, k);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out.set(i, j, 0.5 * (acc(i, j) + acc(j, i)));
  }
  return out;
}

SymmetricMatrix principal_submatrix(const SymmetricMatrix& q,
                                    const IndexSet& s) {
  const auto& idx = s.members();
  const int k = s.size();
  SymmetricMatrix sub(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) sub.set(i, j, q(idx[i], idx[j]));
  }
  return sub;
}

SymmetricMatrix padded_submatrix_inverse(const SymmetricMatrix& q,
                                         const IndexSet& s) {
  if (s.universe() != q.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "index set universe");
  }
  SymmetricMatrix out(q.n());
  if (s.empty()) return out;
  const SymmetricMatrix sub = principal_submatrix(q, s);
  LowerTriangularFactor f = [&] {
    try {
      return cholesky(sub);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSingularSubmatrix, e.what());
    }
  }();
  const SymmetricMatrix inv = f.inverse();
  const auto& idx = s.members();
  for (int i = 0; i < s.size(); ++i) {
    for (int j = i; j < s.size(); ++j) out.set(idx[i], idx[j], inv(i, j));
  }
  return out;
}

// ------------------------------------------------------- Schur complement

bool schur_psd_check(const SymmetricMatrix& w11, const Matrix& w12,
                     const SymmetricMatrix& w22, const Tolerances& tol) {
  if (w12.rows() != w11.n() || w12.cols() != w22.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "Schur block shapes");
  }
  const double scale =
      1.0 + std::max({w11.max_abs(), w12.max_abs(), w22.max_abs()});
  if (w11.n() > 0 && min_eigenvalue(w11) < -tol.psd * scale) return false;

  const SymmetricMatrix pinv = pseudoinverse(w11, tol);
  // Range condition W11 W11^+ W12 = W12.
  const Matrix projected = w11.dense() * (pinv.dense() * w12);
  const Matrix residual = projected - w12;
  if (residual.max_abs() > tol.range * scale) return false;

  if (w22.n() == 0) return true;
  const Matrix schur =
      w22.dense() - w12.transpose() * (pinv.dense() * w12);
  // Symmetrize rounding noise before the eigen test.
  Matrix sym(schur.rows(), schur.cols());
  for (int i = 0; i < schur.rows(); ++i) {
    for (int j = 0; j < schur.cols(); ++j) {
      sym(i, j) = 0.5 * (schur(i, j) + schur(j, i));
    }
  }
  return min_eigenvalue(SymmetricMatrix(sym)) >= -tol.psd * scale;
}

// ------------------------------------------------------------- subspaces

Matrix column_space_basis(const Matrix& a, const Tolerances& tol) {
  const int m = a.rows();
  if (m == 0 || a.cols() == 0) return Matrix(m, 0);
  const SingularValueDecomposition d = svd(a, tol);
  const double cut = rank_threshold(d.sigma.front(), tol);
  int r = 0;
  while (r < static_cast<int>(d.sigma.size()) && d.sigma[r] > cut) ++r;
  Matrix basis(m, r);
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < m; ++i) basis(i, k) = d.u(i, k);
  }
  return basis;
}

Matrix null_space_basis(const Matrix& a, const Tolerances& tol) {
  const int n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::identity(n);
  const SingularValueDecomposition d = svd(a, tol);
  const double cut = rank_threshold(d.sigma.front(), tol);
  std::vector<int> keep;
  for (int k = 0; k < n; ++k) {
    if (d.sigma[k] <= cut) keep.push_back(k);
  }
  Matrix basis(n, static_cast<int>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c) {
    for (int i = 0; i < n; ++i) basis(i, static_cast<int>(c)) = d.v(i, keep[c]);
  }
  return basis;
}

Matrix orthogonal_complement(const Matrix& basis, const Tolerances& tol) {
  if (basis.cols() == 0) return Matrix::identity(basis.rows());
  return null_space_basis(basis.transpose(), tol);
}

Matrix subspace_intersection(std::span<const Matrix> bases,
                             const Tolerances& tol) {
  if (bases.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "no subspaces to intersect");
  }
  const int d = bases.front().rows();
  std::vector<Vector> rows;
  for (const Matrix& b : bases) {
    if (b.rows() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "ambient dimensions differ");
    }
    const Matrix comp = orthogonal_complement(b, tol);
    for (int k = 0; k < comp.cols(); ++k) rows.push_back(comp.col(k));
  }
  if (rows.empty()) return Matrix::identity(d);
  Matrix stacked(static_cast<int>(rows.size()), d);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < d; ++j) stacked(static_cast<int>(r), j) = rows[r][j];
  }
  return null_space_basis(stacked, tol);
}

bool same_subspace(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "ambient dimensions differ");
  }
  const Matrix qa = column_space_basis(a, tol);
  const Matrix qb = column_space_basis(b, tol);
  if (qa.cols() != qb.cols()) return false;
  if (qa.cols() == 0) return true;
  // Residual of projecting each basis onto the other.
  const Matrix pa = qa * (qa.transpose() * qb);
  const Matrix pb = qb * (qb.transpose() * qa);
  const double cut = 1e-8;
  return (pa - qb).max_abs() <= cut && (pb - qa).max_abs() <= cut;
}

}  // namespace hullkit
