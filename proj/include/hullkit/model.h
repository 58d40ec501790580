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

// Convex quadratic problems with indicator variables:
//
//   min  a^T x + b^T z + t/2 + offset
//   s.t. t >= x^T Q x,  x_i (1 - z_i) = 0,  z in Z,
//
// together with the support-enumeration oracle and instance generators.

#ifndef HULLKIT_MODEL_H_
#define HULLKIT_MODEL_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hullkit/linalg.h"

namespace hullkit {

// Largest number of supports any enumeration routine will visit.
inline constexpr std::uint64_t kMaxEnumerableSupports = std::uint64_t{1} << 24;

// Admissible indicator patterns, as bitmasks over [0, n).
class SupportFamily {
 public:
  enum class Kind { kHypercube, kCardinalityAtMost, kChooseOne, kExplicitList };

  static SupportFamily hypercube();
  static SupportFamily cardinality_at_most(int r);
  // sum_i z_i <= 1.
  static SupportFamily choose_one();
  // Masks are sorted; duplicates throw kInvalidParameters.
  static SupportFamily explicit_list(std::vector<std::uint64_t> masks);

  Kind kind() const { return kind_; }
  // Cardinality cap; n for the hypercube, 1 for choose-one, and the largest
  // member size for explicit lists.
  int cardinality(int n) const;
  const std::vector<std::uint64_t>& masks() const { return masks_; }

  bool contains(std::uint64_t mask) const;
  // Throws kInvalidParameters when the family is not a family over [0, n).
  void validate(int n) const;

  // Number of admissible supports over [0, n), saturating at 2^63.
  std::uint64_t count(int n) const;
  // Visits admissible masks in increasing order. Throws kTooManySupports
  // when count(n) exceeds kMaxEnumerableSupports or n > 63.
  void for_each(int n, const std::function<void(std::uint64_t)>& fn) const;
  // Visits admissible masks in [lo, hi) in increasing order, no guard.
  void for_each_in_range(int n, std::uint64_t lo, std::uint64_t hi,
                         const std::function<void(std::uint64_t)>& fn) const;
  std::vector<std::uint64_t> enumerate(int n) const;

  std::string describe() const;

  friend bool operator==(const SupportFamily&, const SupportFamily&) = default;

 private:
  Kind kind_ = Kind::kHypercube;
  int r_ = 0;
  std::vector<std::uint64_t> masks_;
};

class MiqoInstance {
 public:
  // Throws kDimensionMismatch on inconsistent sizes and kInvalidParameters
  // when Q has an eigenvalue below -1e-8 or Z is not a family over [0, n).
  MiqoInstance(SymmetricMatrix q, Vector a, Vector b, SupportFamily z,
               double offset = 0.0);

  int n() const { return q_.n(); }
  const SymmetricMatrix& q() const { return q_; }
  const Vector& a() const { return a_; }
  const Vector& b() const { return b_; }
  const SupportFamily& support_family() const { return z_; }
  double offset() const { return offset_; }

 private:
  SymmetricMatrix q_;
  Vector a_;
  Vector b_;
  SupportFamily z_;
  double offset_;
};

// Q = F F^T with F an n x k matrix.
class FactorizedInstance {
 public:
  FactorizedInstance(Matrix f, Vector a, Vector b, SupportFamily z,
                     double offset = 0.0);

  int n() const { return f_.rows(); }
  int k() const { return f_.cols(); }
  const Matrix& f() const { return f_; }
  const Vector& a() const { return a_; }
  const Vector& b() const { return b_; }
  const SupportFamily& support_family() const { return z_; }
  double offset() const { return offset_; }
  bool full_column_rank() const;
  SymmetricMatrix q() const;
  MiqoInstance to_miqo() const;

 private:
  Matrix f_;
  Vector a_;
  Vector b_;
  SupportFamily z_;
  double offset_;
};

struct SolutionPoint {
  Vector x;
  Vector z;
  double t = 0.0;
};

// a^T x + b^T z + x^T Q x / 2 + offset.
double evaluate_objective(const MiqoInstance& inst, const SolutionPoint& p);

// z binary within tol, its support in Z, and |x_i| (1 - z_i) <= tol.
bool is_feasible(const MiqoInstance& inst, const SolutionPoint& p,
                 double tol = 1e-9);

// Support bitmask of a 0/1 vector (entries above 1/2 count as one).
std::uint64_t support_mask(const Vector& z);
Vector indicator(std::uint64_t mask, int n);

// Minimizer of the objective restricted to support S: x_S = -Q_S^{-1} a_S.
// Throws kSingularSubmatrix when Q_S is not positive definite.
Vector support_minimizer(const MiqoInstance& inst, const IndexSet& s);

struct BruteForceResult {
  double value;
  IndexSet support;
  Vector x;
  std::uint64_t supports_visited = 0;
};

// Exact optimum by enumerating Z. Each support is scored with
// evaluate_objective at (support_minimizer, 1_S); ties go to the smaller
// mask. Work is split across thread_count() threads with a deterministic
// reduction.
BruteForceResult brute_force_solve(const MiqoInstance& inst);

// Same oracle for Q = F F^T without requiring Q_S to be invertible: per
// support the value is b^T 1_S - |F_S^+ a_S|^2 / 2 when a_S lies in col(F_S)
// and -infinity otherwise.
BruteForceResult brute_force_solve(const FactorizedInstance& inst);

// Threads used by parallel enumerations: hardware concurrency, capped by the
// HULLKIT_THREADS environment variable when set.
int thread_count();

// ||beta - F x||^2 for F with rows(F) observations of n features:
// Q = 2 F^T F, a = -2 F^T beta, b = 0, Z = card <= ceil(k n),
// offset = beta^T beta.
MiqoInstance gen_best_subset(const Matrix& f, const Vector& beta, double k);

// Grid-graph denoising: sum_i (y_i - x_i)^2 / sigma^2 + sum_(i,j) (x_i - x_j)^2
// over a rows x cols 4-neighbour grid, nodes numbered row-major.
MiqoInstance gen_gmrf(int rows, int cols, double sigma, double k,
                      const Vector& y);

// Noisy observation of a sparse grid signal: x is 1 on `blocks` uniformly
// placed 2x2 blocks (overlaps allowed) and 0 elsewhere, y = x + N(0, sigma^2).
// Deterministic per seed.
Vector gmrf_observations(int rows, int cols, double sigma, std::uint64_t seed,
                         int blocks = 2);

// Laplacian of the rows x cols 4-neighbour grid.
SymmetricMatrix grid_laplacian(int rows, int cols);

// G G^T + diag_dominance I with G standard normal from a seeded mt19937_64.
SymmetricMatrix gen_random_psd(int n, std::uint64_t seed,
                               double diag_dominance);

}  // namespace hullkit

#endif  // HULLKIT_MODEL_H_
