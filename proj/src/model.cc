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

#include "hullkit/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "hullkit/error.h"

namespace hullkit {

namespace {

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 63;

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// C(n, j) saturating at 2^63.
std::uint64_t binomial(int n, int j) {
  if (j < 0 || j > n) return 0;
  j = std::min(j, n - j);
  long double c = 1.0L;
  for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
  if (c >= static_cast<long double>(kSaturated)) return kSaturated;
  return static_cast<std::uint64_t>(std::llround(c));
}

// Cardinality cap ceil(k n), with a little slack so that k n landing just
// above an integer through rounding (0.3 * 10) does not round up.
int cardinality_from_fraction(double k, int n) {
  if (!(k > 0.0) || k > 1.0) {
    throw Error(ErrorCode::kInvalidParameters,
                "cardinality fraction must lie in (0, 1]");
  }
  const int r = static_cast<int>(std::ceil(k * n - 1e-9));
  return std::clamp(r, 0, n);
}

}  // namespace

// ---------------------------------------------------------- SupportFamily

SupportFamily SupportFamily::hypercube() { return SupportFamily(); }

SupportFamily SupportFamily::cardinality_at_most(int r) {
  if (r < 0) {
    throw Error(ErrorCode::kInvalidParameters, "negative cardinality cap");
  }
  SupportFamily z;
  z.kind_ = Kind::kCardinalityAtMost;
  z.r_ = r;
  return z;
}

SupportFamily SupportFamily::choose_one() {
  SupportFamily z;
  z.kind_ = Kind::kChooseOne;
  z.r_ = 1;
  return z;
}

SupportFamily SupportFamily::explicit_list(std::vector<std::uint64_t> masks) {
  std::sort(masks.begin(), masks.end());
  if (std::adjacent_find(masks.begin(), masks.end()) != masks.end()) {
    throw Error(ErrorCode::kInvalidParameters, "duplicate support in list");
  }
  SupportFamily z;
  z.kind_ = Kind::kExplicitList;
  z.masks_ = std::move(masks);
  for (std::uint64_t m : z.masks_) z.r_ = std::max(z.r_, std::popcount(m));
  return z;
}

int SupportFamily::cardinality(int n) const {
  switch (kind_) {
    case Kind::kHypercube: return n;
    case Kind::kCardinalityAtMost: return std::min(r_, n);
    case Kind::kChooseOne: return std::min(1, n);
    case Kind::kExplicitList: return r_;
  }
  return n;
}

bool SupportFamily::contains(std::uint64_t mask) const {
  switch (kind_) {
    case Kind::kHypercube: return true;
    case Kind::kCardinalityAtMost: return std::popcount(mask) <= r_;
    case Kind::kChooseOne: return std::popcount(mask) <= 1;
    case Kind::kExplicitList:
      return std::binary_search(masks_.begin(), masks_.end(), mask);
  }
  return false;
}

void SupportFamily::validate(int n) const {
  if (kind_ == Kind::kCardinalityAtMost && r_ > n) {
    throw Error(ErrorCode::kInvalidParameters,
                "cardinality cap " + std::to_string(r_) + " exceeds n = " +
                    std::to_string(n));
  }
  if (kind_ == Kind::kExplicitList) {
    for (std::uint64_t m : masks_) {
      if (n < 64 && (m >> n) != 0) {
        throw Error(ErrorCode::kInvalidParameters,
                    "listed support is not a subset of [0, n)");
      }
    }
  }
}

std::uint64_t SupportFamily::count(int n) const {
  switch (kind_) {
    case Kind::kHypercube:
      return n >= 63 ? kSaturated : std::uint64_t{1} << n;
    case Kind::kCardinalityAtMost: {
      std::uint64_t c = 0;
      for (int j = 0; j <= std::min(r_, n); ++j) {
        c = saturating_add(c, binomial(n, j));
      }
      return c;
    }
    case Kind::kChooseOne:
      return static_cast<std::uint64_t>(n) + 1;
    case Kind::kExplicitList:
      return masks_.size();
  }
  return 0;
}

void SupportFamily::for_each_in_range(
    int n, std::uint64_t lo, std::uint64_t hi,
    const std::function<void(std::uint64_t)>& fn) const {
  switch (kind_) {
    case Kind::kHypercube:
      for (std::uint64_t m = lo; m < hi; ++m) fn(m);
      return;
    case Kind::kCardinalityAtMost: {
      std::uint64_t m = lo;
      while (m < hi) {
        if (std::popcount(m) > r_) {
          // Carry into the lowest set bit until the popcount fits.
          m += m & (~m + 1);
          continue;
        }
        fn(m);
        ++m;
      }
      return;
    }
    case Kind::kChooseOne:
      if (lo == 0 && hi > 0) fn(0);
      for (int i = 0; i < n; ++i) {
        const std::uint64_t m = std::uint64_t{1} << i;
        if (m >= lo && m < hi) fn(m);
      }
      return;
    case Kind::kExplicitList:
      for (std::uint64_t m : masks_) {
        if (m >= lo && m < hi) fn(m);
      }
      return;
  }
}

void SupportFamily::for_each(
    int n, const std::function<void(std::uint64_t)>& fn) const {
  const std::uint64_t c = count(n);
  if (n > 63 || c > kMaxEnumerableSupports) {
    throw Error(ErrorCode::kTooManySupports,
                std::to_string(c) + " supports exceed the enumeration cap");
  }
  for_each_in_range(n, 0, std::uint64_t{1} << n, fn);
}

std::vector<std::uint64_t> SupportFamily::enumerate(int n) const {
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<size_t>(std::min(count(n), kMaxEnumerableSupports)));
  for_each(n, [&](std::uint64_t m) { out.push_back(m); });
  return out;
}

std::string SupportFamily::describe() const {
  switch (kind_) {
    case Kind::kHypercube: return "hypercube";
    case Kind::kCardinalityAtMost: return "cardinality<=" + std::to_string(r_);
    case Kind::kChooseOne: return "choose-one";
    case Kind::kExplicitList:
      return "explicit(" + std::to_string(masks_.size()) + ")";
  }
  return "?";
}

// -------------------------------------------------------------- instances

MiqoInstance::MiqoInstance(SymmetricMatrix q, Vector a, Vector b,
                           SupportFamily z, double offset)
    : q_(std::move(q)), a_(std::move(a)), b_(std::move(b)), z_(std::move(z)),
      offset_(offset) {
  const int n = q_.n();
  if (n < 1) throw Error(ErrorCode::kInvalidParameters, "empty instance");
  if (static_cast<int>(a_.size()) != n || static_cast<int>(b_.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "a and b must have length n = " + std::to_string(n));
  }
  if (!std::isfinite(offset_) ||
      !std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); }) ||
      !std::all_of(b_.begin(), b_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kInvalidParameters, "non-finite instance data");
  }
  z_.validate(n);
  const double lam = min_eigenvalue(q_);
  if (lam < -1e-8) {
    throw Error(ErrorCode::kInvalidParameters,
                "Q is not positive semidefinite (min eigenvalue " +
                    std::to_string(lam) + ")");
  }
}

FactorizedInstance::FactorizedInstance(Matrix f, Vector a, Vector b,
                                       SupportFamily z, double offset)
    : f_(std::move(f)), a_(std::move(a)), b_(std::move(b)), z_(std::move(z)),
      offset_(offset) {
  const int n = f_.rows();
  if (n < 1 || f_.cols() < 1) {
    throw Error(ErrorCode::kInvalidParameters, "empty factor");
  }
  if (!f_.all_finite()) {
    throw Error(ErrorCode::kInvalidParameters, "non-finite factor entry");
  }
  if (static_cast<int>(a_.size()) != n || static_cast<int>(b_.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "a and b must have length rows(F)");
  }
  z_.validate(n);
}

bool FactorizedInstance::full_column_rank() const {
  return numerical_rank(f_) == f_.cols();
}

SymmetricMatrix FactorizedInstance::q() const {
  const Matrix g = f_ * f_.transpose();
  SymmetricMatrix q(n());
  for (int i = 0; i < n(); ++i) {
    for (int j = i; j < n(); ++j) q.set(i, j, g(i, j));
  }
  return q;
}

MiqoInstance FactorizedInstance::to_miqo() const {
  return MiqoInstance(q(), a_, b_, z_, offset_);
}

// ------------------------------------------------------------- evaluation

double evaluate_objective(const MiqoInstance& inst, const SolutionPoint& p) {
  const int n = inst.n();
  if (static_cast<int>(p.x.size()) != n || static_cast<int>(p.z.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "solution point length");
  }
  const SymmetricMatrix& q = inst.q();
  double linear = 0.0;
  double quad = 0.0;
  for (int i = 0; i < n; ++i) {
    linear += inst.b()[i] * p.z[i];
    const double xi = p.x[i];
    if (xi == 0.0) continue;
    linear += inst.a()[i] * xi;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (p.x[j] != 0.0) row += q(i, j) * p.x[j];
    }
    quad += xi * row;
  }
  return linear + 0.5 * quad + inst.offset();
}

bool is_feasible(const MiqoInstance& inst, const SolutionPoint& p, double tol) {
  const int n = inst.n();
  if (static_cast<int>(p.x.size()) != n || static_cast<int>(p.z.size()) != n) {
    return false;
  }
  for (int i = 0; i < n; ++i) {
    const double zi = p.z[i];
    if (std::abs(zi) > tol && std::abs(zi - 1.0) > tol) return false;
    if (std::abs(p.x[i]) * (1.0 - zi) > tol) return false;
  }
  return inst.support_family().contains(support_mask(p.z));
}

std::uint64_t support_mask(const Vector& z) {
  std::uint64_t m = 0;
  for (size_t i = 0; i < z.size() && i < 64; ++i) {
    if (z[i] > 0.5) m |= std::uint64_t{1} << i;
  }
  return m;
}

Vector indicator(std::uint64_t mask, int n) {
  Vector z(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1) z[i] = 1.0;
  }
  return z;
}

Vector support_minimizer(const MiqoInstance& inst, const IndexSet& s) {
  Vector x(inst.n(), 0.0);
  if (s.empty()) return x;
  const SymmetricMatrix qs = principal_submatrix(inst.q(), s);
  const auto& idx = s.members();
  Vector as(s.size());
  for (int i = 0; i < s.size(); ++i) as[i] = inst.a()[idx[i]];
  Vector xs;
  try {
    xs = cholesky(qs).solve(as);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotPositiveDefinite) {
      throw Error(ErrorCode::kSingularSubmatrix, e.what());
    }
    throw;
  }
  for (int i = 0; i < s.size(); ++i) x[idx[i]] = -xs[i];
  return x;
}

int thread_count() {
  int t = static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* env = std::getenv("HULLKIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) t = std::min(t, cap);
  }
  return t;
}

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;
  std::uint64_t visited = 0;
  bool found = false;

  void offer(double v, std::uint64_t m) {
    ++visited;
    if (!found || v < value || (v == value && m < mask)) {
      value = v;
      mask = m;
      found = true;
    }
  }
};

}  // namespace

BruteForceResult brute_force_solve(const MiqoInstance& inst) {
  const int n = inst.n();
  const SupportFamily& family = inst.support_family();
  const std::uint64_t c = family.count(n);
  if (n > 63 || c > kMaxEnumerableSupports) {
    throw Error(ErrorCode::kTooManySupports,
                std::to_string(c) + " supports exceed the enumeration cap");
  }
  auto score = [&](std::uint64_t mask) {
    SolutionPoint p{support_minimizer(inst, IndexSet::from_mask(mask, n)),
                    indicator(mask, n), 0.0};
    return evaluate_objective(inst, p);
  };

  const std::uint64_t end = std::uint64_t{1} << n;
  int threads = thread_count();
  if (c < 4096) threads = 1;
  std::vector<Best> partial(threads);
  if (threads == 1) {
    family.for_each_in_range(n, 0, end, [&](std::uint64_t m) {
      partial[0].offer(score(m), m);
    });
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t lo = end / threads * t;
      const std::uint64_t hi = t + 1 == threads ? end : end / threads * (t + 1);
      pool.emplace_back([&, t, lo, hi] {
        try {
          family.for_each_in_range(n, lo, hi, [&](std::uint64_t m) {
            partial[t].offer(score(m), m);
          });
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Best best;
  std::uint64_t visited = 0;
  for (const Best& b : partial) {
    visited += b.visited;
    if (!b.found) continue;
    if (!best.found || b.value < best.value ||
        (b.value == best.value && b.mask < best.mask)) {
      best = b;
    }
  }
  if (!best.found) {
    throw Error(ErrorCode::kInvalidParameters, "support family is empty");
  }
  const IndexSet s = IndexSet::from_mask(best.mask, n);
  return {best.value, s, support_minimizer(inst, s), visited};
}

BruteForceResult brute_force_solve(const FactorizedInstance& inst) {
  const int n = inst.n();
  const Matrix& f = inst.f();
  Best best;
  Vector best_x(n, 0.0);
  inst.support_family().for_each(n, [&](std::uint64_t mask) {
    const IndexSet s = IndexSet::from_mask(mask, n);
    const auto& idx = s.members();
    double value = inst.offset();
    for (int i : idx) value += inst.b()[i];
    Vector x(n, 0.0);
    if (!s.empty()) {
      Matrix fs(s.size(), inst.k());
      Vector as(s.size());
      for (int i = 0; i < s.size(); ++i) {
        as[i] = inst.a()[idx[i]];
        for (int j = 0; j < inst.k(); ++j) fs(i, j) = f(idx[i], j);
      }
      const Matrix pinv = pseudoinverse(fs);
      const Vector u = pinv * as;
      const Vector back = fs * u;
      double residual = 0.0;
      for (int i = 0; i < s.size(); ++i) {
        residual = std::max(residual, std::abs(back[i] - as[i]));
      }
      if (residual > 1e-9 * (1.0 + norm_inf(as))) {
        value = -std::numeric_limits<double>::infinity();
      } else {
        value -= 0.5 * dot(u, u);
        const Vector xs = pinv.transpose() * u;
        for (int i = 0; i < s.size(); ++i) x[idx[i]] = -xs[i];
      }
    }
    best.offer(value, mask);
    if (best.mask == mask) best_x = std::move(x);
  });
  if (!best.found) {
    throw Error(ErrorCode::kInvalidParameters, "support family is empty");
  }
  return {best.value, IndexSet::from_mask(best.mask, n), best_x, best.visited};
}

// ------------------------------------------------------------- generators

MiqoInstance gen_best_subset(const Matrix& f, const Vector& beta, double k) {
  const int m = f.rows();
  const int n = f.cols();
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidParameters, "empty design matrix");
  }
  if (static_cast<int>(beta.size()) != m) {
    throw Error(ErrorCode::kDimensionMismatch, "beta length must be rows(F)");
  }
  const Matrix ft = f.transpose();
  const Matrix g = ft * f;
  SymmetricMatrix q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q.set(i, j, 2.0 * g(i, j));
  }
  Vector a = ft * beta;
  for (double& v : a) v *= -2.0;
  return MiqoInstance(
      std::move(q), std::move(a), Vector(n, 0.0),
      SupportFamily::cardinality_at_most(cardinality_from_fraction(k, n)),
      dot(beta, beta));
}

SymmetricMatrix grid_laplacian(int rows, int cols) {
  const int n = rows * cols;
  SymmetricMatrix l(n);
  auto edge = [&](int u, int v) {
    l.set(u, u, l(u, u) + 1.0);
    l.set(v, v, l(v, v) + 1.0);
    l.set(u, v, l(u, v) - 1.0);
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int u = r * cols + c;
      if (c + 1 < cols) edge(u, u + 1);
      if (r + 1 < rows) edge(u, u + cols);
    }
  }
  return l;
}

MiqoInstance gen_gmrf(int rows, int cols, double sigma, double k,
                      const Vector& y) {
  if (rows < 1 || cols < 1 || !(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidParameters, "grid shape and sigma > 0");
  }
  const int n = rows * cols;
  if (static_cast<int>(y.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "y must have rows*cols entries");
  }
  const double w = 1.0 / (sigma * sigma);
  const SymmetricMatrix l = grid_laplacian(rows, cols);
  SymmetricMatrix q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      q.set(i, j, 2.0 * ((i == j ? w : 0.0) + l(i, j)));
    }
  }
  Vector a(n);
  for (int i = 0; i < n; ++i) a[i] = -2.0 * w * y[i];
  return MiqoInstance(
      std::move(q), std::move(a), Vector(n, 0.0),
      SupportFamily::cardinality_at_most(cardinality_from_fraction(k, n)),
      w * dot(y, y));
}

Vector gmrf_observations(int rows, int cols, double sigma, std::uint64_t seed,
                         int blocks) {
  if (rows < 2 || cols < 2 || !(sigma >= 0.0) || blocks < 0) {
    throw Error(ErrorCode::kInvalidParameters, "grid needs 2x2 room, sigma >= 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> top(0, rows - 2), left(0, cols - 2);
  Vector y(static_cast<std::size_t>(rows) * cols, 0.0);
  for (int b = 0; b < blocks; ++b) {
    const int r = top(rng);
    const int c = left(rng);
    for (int i = r; i < r + 2; ++i) {
      for (int j = c; j < c + 2; ++j) y[i * cols + j] = 1.0;
    }
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double& v : y) v += sigma * noise(rng);
  return y;
}

SymmetricMatrix gen_random_psd(int n, std::uint64_t seed,
                               double diag_dominance) {
  if (n < 1 || diag_dominance < 0.0) {
    throw Error(ErrorCode::kInvalidParameters, "n >= 1 and shift >= 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  SymmetricMatrix q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g(i, k) * g(j, k);
      q.set(i, j, s + (i == j ? diag_dominance : 0.0));
    }
  }
  return q;
}

}  // namespace hullkit
