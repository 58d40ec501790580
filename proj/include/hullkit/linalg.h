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

// Dense linear algebra for small problems (n up to a few hundred):
// Cholesky, Jacobi eigen/singular value decompositions, Moore-Penrose
// pseudoinverses, padded submatrix inverses and subspace operations.

#ifndef HULLKIT_LINALG_H_
#define HULLKIT_LINALG_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace hullkit {

using Vector = std::vector<double>;

// Numerical thresholds shared by every decomposition in the library.
struct Tolerances {
  // Singular values below max(rank_relative * sigma_max, rank_floor) are
  // treated as zero.
  double rank_relative = 1e-10;
  double rank_floor = 1e-12;
  // Cyclic Jacobi stops when the off-diagonal Frobenius mass drops below
  // jacobi_offdiag * ||A||.
  double jacobi_offdiag = 1e-12;
  int jacobi_max_sweeps = 100;
  // Cholesky pivots at or below cholesky_pivot * max|A_ij| fail.
  double cholesky_pivot = 1e-12;
  // Semidefiniteness and range checks.
  double psd = 1e-8;
  double range = 1e-8;
};

const Tolerances& default_tolerances();

// Dense row-major real matrix. Zero-sized dimensions are allowed (an n x 0
// matrix is the basis of the trivial subspace of R^n).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(int n);
  static Matrix column(const Vector& v);
  static Matrix from_rows(int rows, int cols, std::span<const double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return data_[i * cols_ + j]; }
  double operator()(int i, int j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const { return data_; }

  Vector col(int j) const;
  Vector row(int i) const;
  void set_col(int j, const Vector& v);

  Matrix transpose() const;
  // Largest absolute entry.
  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, const Vector& x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

// Square symmetric matrix. Symmetry is established at construction and every
// mutation writes both triangles.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n);
  // Throws kInvalidParameters unless `m` is square, finite and symmetric to
  // within 1e-12 * (1 + max|m_ij|); the result is the exact average of m
  // and its transpose.
  explicit SymmetricMatrix(const Matrix& m);
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows);
  static SymmetricMatrix identity(int n);
  static SymmetricMatrix diagonal(const Vector& d);
  // Builds a * a^T.
  static SymmetricMatrix outer(const Vector& a);

  int n() const { return m_.rows(); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v);
  const Matrix& dense() const { return m_; }

  double max_abs() const { return m_.max_abs(); }
  double trace() const;
  // <A, B> = sum_ij A_ij B_ij.
  double inner(const SymmetricMatrix& other) const;
  double quadratic_form(std::span<const double> x) const;

  friend bool operator==(const SymmetricMatrix&,
                         const SymmetricMatrix&) = default;

 private:
  Matrix m_;
};

SymmetricMatrix operator+(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator-(const SymmetricMatrix& a, const SymmetricMatrix& b);
SymmetricMatrix operator*(double s, const SymmetricMatrix& a);

// Sorted set of distinct indices drawn from [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  // Throws kInvalidParameters on duplicates or out-of-range members.
  IndexSet(std::vector<int> members, int universe);
  static IndexSet from_mask(std::uint64_t mask, int universe);
  static IndexSet all(int universe);

  std::uint64_t mask() const;
  int universe() const { return universe_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int i) const;
  const std::vector<int>& members() const { return members_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> members_;
  int universe_ = 0;
};

class LowerTriangularFactor {
 public:
  explicit LowerTriangularFactor(Matrix l) : l_(std::move(l)) {}
  const Matrix& l() const { return l_; }
  int n() const { return l_.rows(); }
  // Solves (L L^T) x = b.
  Vector solve(const Vector& b) const;
  SymmetricMatrix inverse() const;

 private:
  Matrix l_;
};

// Throws kNotPositiveDefinite when a pivot falls to cholesky_pivot * max|A|.
LowerTriangularFactor cholesky(const SymmetricMatrix& a,
                               const Tolerances& tol = default_tolerances());

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values[i]
};

// Cyclic Jacobi. Deterministic for a fixed input; throws kNoConvergence
// after jacobi_max_sweeps sweeps.
EigenDecomposition eig_sym(const SymmetricMatrix& a,
                           const Tolerances& tol = default_tolerances());

double min_eigenvalue(const SymmetricMatrix& a);
double max_eigenvalue(const SymmetricMatrix& a);

struct SingularValueDecomposition {
  // A = U diag(sigma) V^T with sigma descending. U is rows(A) x cols(A) with
  // orthonormal columns wherever sigma > 0 (zero columns otherwise); V is a
  // full cols(A) x cols(A) orthogonal matrix.
  Matrix u;
  Vector sigma;
  Matrix v;
};

// One-sided (Hestenes) Jacobi; singular values are accurate to roughly
// machine precision times ||A||, so zero singular values stay near zero.
SingularValueDecomposition svd(const Matrix& a,
                               const Tolerances& tol = default_tolerances());

double rank_threshold(double sigma_max,
                      const Tolerances& tol = default_tolerances());
int numerical_rank(const Matrix& a,
                   const Tolerances& tol = default_tolerances());

Matrix pseudoinverse(const Matrix& a,
                     const Tolerances& tol = default_tolerances());
SymmetricMatrix pseudoinverse(const SymmetricMatrix& a,
                              const Tolerances& tol = default_tolerances());

// n x n matrix equal to (Q_S)^{-1} on S x S and zero elsewhere. Throws
// kSingularSubmatrix when Q_S is not positive definite.
SymmetricMatrix padded_submatrix_inverse(const SymmetricMatrix& q,
                                         const IndexSet& s);

SymmetricMatrix principal_submatrix(const SymmetricMatrix& q,
                                    const IndexSet& s);

// Generalized Schur complement test for [[W11, W12], [W12^T, W22]] >= 0.
bool schur_psd_check(const SymmetricMatrix& w11, const Matrix& w12,
                     const SymmetricMatrix& w22,
                     const Tolerances& tol = default_tolerances());

// Orthonormal basis (as columns) of col(A); rows(A) x 0 when A is zero.
Matrix column_space_basis(const Matrix& a,
                          const Tolerances& tol = default_tolerances());
// Orthonormal basis of {x : A x = 0}.
Matrix null_space_basis(const Matrix& a,
                        const Tolerances& tol = default_tolerances());
// Orthonormal basis of the orthogonal complement of col(basis).
Matrix orthogonal_complement(const Matrix& basis,
                             const Tolerances& tol = default_tolerances());
// Intersection of subspaces given by basis columns, all in the same ambient
// dimension: the null space of the stacked complement bases.
Matrix subspace_intersection(std::span<const Matrix> bases,
                             const Tolerances& tol = default_tolerances());
// True when col(a) and col(b) coincide (mutual containment).
bool same_subspace(const Matrix& a, const Matrix& b,
                   const Tolerances& tol = default_tolerances());

}  // namespace hullkit

#endif  // HULLKIT_LINALG_H_
