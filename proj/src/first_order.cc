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

#include "hullkit/first_order.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "hullkit/error.h"

namespace hullkit {

namespace {

constexpr double kZeroZ = 1e-9;

struct Eval {
  double value;  // smooth part plus the separable nonsmooth part
  Vector grad;   // gradient of the smooth part
  Vector x, z;
};

// Proximal gradient with Armijo backtracking on the composite objective.
// `prox(v, alpha)` maps a gradient step to the feasible set; `fw_gap` returns
// the Frank-Wolfe gap at a point.
RelaxationBound proximal_gradient(
    Vector p, const std::function<Eval(const Vector&)>& eval,
    const std::function<Vector(const Vector&, double)>& prox,
    const std::function<double(const Vector&, const Eval&)>& fw_gap,
    const FirstOrderOptions& opt) {
  const int n = static_cast<int>(p.size());
  auto step_from = [&](const Vector& q, const Vector& g, double alpha) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = q[i] - alpha * g[i];
    return prox(v, alpha);
  };
  auto dist = [&](const Vector& a, const Vector& b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };

  RelaxationBound out;
  Eval cur = eval(p);
  double alpha = 1.0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    out.pg_norm = dist(p, step_from(p, cur.grad, 1.0));
    if (out.pg_norm <= opt.tol) {
      out.converged = true;
      break;
    }
    bool moved = false;
    for (int halvings = 0; halvings < 80; ++halvings, alpha *= 0.5) {
      Vector next = step_from(p, cur.grad, alpha);
      const double d = dist(next, p);
      if (d == 0.0) break;
      Eval trial = eval(next);
      if (trial.value <= cur.value - opt.armijo / alpha * d * d) {
        p = std::move(next);
        cur = std::move(trial);
        moved = true;
        break;
      }
    }
    if (!moved) break;
    alpha = std::min(alpha * 2.0, 1e8);
  }
  if (it == opt.max_iterations) out.pg_norm = dist(p, step_from(p, cur.grad, 1.0));
  out.iterations = it;
  out.value = cur.value;
  out.lower_bound = cur.value - std::max(0.0, fw_gap(p, cur));
  out.x = cur.x;
  out.z = cur.z;
  return out;
}

// min c^T u over u in [0,1]^n, sum u <= r.
double capped_linear_min(Vector c, double r) {
  std::sort(c.begin(), c.end());
  double total = 0.0;
  double left = r;
  for (double v : c) {
    if (v >= 0.0 || left <= 0.0) break;
    total += v * std::min(1.0, left);
    left -= 1.0;
  }
  return total;
}

}  // namespace

Vector weighted_capped_project(const Vector& c, const Vector& s, const Vector& u, double r) {
  const std::size_t n = c.size();
  if (s.size() != n || u.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "projection data lengths differ");
  }
  if (!(r >= 0.0)) throw Error(ErrorCode::kInvalidParameters, "cap must be >= 0");
  auto at = [&](double theta) {
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::clamp(c[i] - theta * s[i], 0.0, u[i]);
    return w;
  };
  auto load = [&](double theta) {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += s[i] * std::clamp(c[i] - theta * s[i], 0.0, u[i]);
    return t;
  };
  if (load(0.0) <= r) return at(0.0);
  // load is piecewise linear and nonincreasing in theta; locate the piece.
  std::vector<double> knots{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if ((c[i] - u[i]) / s[i] > 0.0) knots.push_back((c[i] - u[i]) / s[i]);
    if (c[i] / s[i] > 0.0) knots.push_back(c[i] / s[i]);
  }
  std::sort(knots.begin(), knots.end());
  double lo = 0.0, lo_load = load(0.0);
  for (double k : knots) {
    const double kl = load(k);
    if (kl <= r) {
      const double theta = kl == lo_load ? k : lo + (lo_load - r) * (k - lo) / (lo_load - kl);
      return at(theta);
    }
    lo = k;
    lo_load = kl;
  }
  return at(knots.back());
}

Vector capped_simplex_project(const Vector& v, double r) {
  const Vector one(v.size(), 1.0);
  return weighted_capped_project(v, one, one, r);
}

double relaxation_cap(const MiqoInstance& inst) {
  const SupportFamily& z = inst.support_family();
  switch (z.kind()) {
    case SupportFamily::Kind::kHypercube:
      return inst.n();
    case SupportFamily::Kind::kCardinalityAtMost:
    case SupportFamily::Kind::kChooseOne:
      return std::min(z.cardinality(inst.n()), inst.n());
    default:
      throw Error(ErrorCode::kUnsupportedSupportFamily,
                  "first-order bounds need a cardinality-type family");
  }
}

RelaxationBound perspective_relaxation_bound(const MiqoInstance& inst, double delta,
                                             const FirstOrderOptions& opt) {
  const int n = inst.n();
  const SymmetricMatrix& q = inst.q();
  if (!(delta >= 0.0) || delta > min_eigenvalue(q) + 1e-9) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in [0, lambda_min(Q)]");
  }
  const double r = relaxation_cap(inst);
  const Vector& a = inst.a();
  const Vector& b = inst.b();

  auto eval = [&](const Vector& z) {
    Eval e;
    e.z = z;
    e.x.assign(n, 0.0);
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (delta == 0.0 || z[i] > kZeroZ) s.push_back(i);
    }
    const int k = static_cast<int>(s.size());
    double value = inst.offset();
    for (int i = 0; i < n; ++i) value += b[i] * z[i];
    if (k > 0) {
      SymmetricMatrix h(k);
      Vector rhs(k);
      for (int p = 0; p < k; ++p) {
        for (int t = p; t < k; ++t) h.set(p, t, q(s[p], s[t]));
        if (delta > 0.0) h.set(p, p, q(s[p], s[p]) - delta + delta / z[s[p]]);
        rhs[p] = -a[s[p]];
      }
      const Vector xs = cholesky(h).solve(rhs);
      for (int p = 0; p < k; ++p) {
        e.x[s[p]] = xs[p];
        value += 0.5 * a[s[p]] * xs[p];
      }
    }
    e.value = value;
    e.grad = b;
    if (delta > 0.0) {
      for (int i = 0; i < n; ++i) {
        if (z[i] > kZeroZ) {
          const double ratio = e.x[i] / z[i];
          e.grad[i] -= 0.5 * delta * ratio * ratio;
        } else {
          // One-sided derivative at z_i = 0+.
          double rho = a[i];
          for (int j : s) rho += q(i, j) * e.x[j];
          e.grad[i] -= rho * rho / (2.0 * delta);
        }
      }
    }
    return e;
  };
  auto prox = [&](const Vector& v, double) { return capped_simplex_project(v, r); };
  auto gap = [&](const Vector& z, const Eval& e) {
    return dot(e.grad, z) - capped_linear_min(e.grad, r);
  };
  Vector start = opt.start;
  if (start.empty()) start.assign(n, std::min(1.0, r / std::max(1, n)));
  if (static_cast<int>(start.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong length");
  }
  return proximal_gradient(capped_simplex_project(start, r), eval, prox, gap, opt);
}

RelaxationBound natural_relaxation_bound(const MiqoInstance& inst, const Vector& bounds,
                                         const FirstOrderOptions& opt) {
  const int n = inst.n();
  if (static_cast<int>(bounds.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "one bound per variable");
  }
  for (double m : bounds) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw Error(ErrorCode::kInvalidParameters, "natural bounds must be positive");
    }
  }
  const Vector& b = inst.b();
  for (double v : b) {
    if (v < 0.0) throw Error(ErrorCode::kUnsupportedSign, "natural bound needs b >= 0");
  }
  const double r = relaxation_cap(inst);
  const SymmetricMatrix& q = inst.q();
  const Vector& a = inst.a();
  Vector inv_m(n);
  for (int i = 0; i < n; ++i) inv_m[i] = 1.0 / bounds[i];

  auto eval = [&](const Vector& x) {
    Eval e;
    e.x = x;
    e.z.resize(n);
    e.grad = q.dense() * x;
    double value = inst.offset();
    for (int i = 0; i < n; ++i) {
      value += 0.5 * x[i] * e.grad[i] + a[i] * x[i] + b[i] * std::abs(x[i]) * inv_m[i];
      e.grad[i] += a[i];
      e.z[i] = std::abs(x[i]) * inv_m[i];
    }
    e.value = value;
    return e;
  };
  auto prox = [&](const Vector& v, double alpha) {
    Vector c(n);
    for (int i = 0; i < n; ++i) c[i] = std::abs(v[i]) - alpha * b[i] * inv_m[i];
    Vector w = weighted_capped_project(c, inv_m, bounds, r);
    for (int i = 0; i < n; ++i) {
      if (v[i] < 0.0) w[i] = -w[i];
    }
    return w;
  };
  auto gap = [&](const Vector& x, const Eval& e) {
    double here = 0.0;
    Vector c(n);
    for (int i = 0; i < n; ++i) {
      here += e.grad[i] * x[i] + b[i] * std::abs(x[i]) * inv_m[i];
      c[i] = b[i] - bounds[i] * std::abs(e.grad[i]);
    }
    return here - capped_linear_min(c, r);
  };
  Vector start = opt.start;
  if (start.empty()) start.assign(n, 0.0);
  if (static_cast<int>(start.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong length");
  }
  return proximal_gradient(prox(start, 0.0), eval, prox, gap, opt);
}

GapReport gap_report(double opt, double lower_bound, std::string formulation) {
  GapReport g;
  g.formulation = std::move(formulation);
  g.opt = opt;
  g.lower_bound = lower_bound;
  if (std::abs(opt) > 1e-12) {
    g.gap_percent = 100.0 * (opt - lower_bound) / std::abs(opt);
  } else {
    g.gap_percent = opt - lower_bound;
    g.absolute = true;
  }
  return g;
}

}  // namespace hullkit
