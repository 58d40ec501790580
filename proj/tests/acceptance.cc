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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hull_support.h"
#include "hullkit/branch_and_bound.h"
#include "hullkit/error.h"
#include "hullkit/experiments.h"
#include "hullkit/first_order.h"
#include "hullkit/formulations.h"
#include "hullkit/hulls.h"
#include "hullkit/lp_file.h"
#include "hullkit/polytope.h"
#include "hullkit/simplex.h"
#include "test_support.h"

namespace hullkit {
namespace {

using testing::max_abs_diff;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failures: " + messages_};
  }

 private:
  int failures_ = 0;
  std::string messages_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

MiqoInstance bivariate(double d1, double d2) {
  return MiqoInstance(SymmetricMatrix{{d1, -1}, {-1, d2}}, {0, 0}, {0, 0},
                      SupportFamily::hypercube());
}

// ---------------------------------------------------------------- 1

Outcome bivariate_vertex_table() {
  Check c;
  double worst = 0;
  for (const auto& [d1, d2] : {std::pair{2.0, 3.0}, {2.0, 2.0}, {5.0, 0.3}}) {
    const double delta = d1 * d2 - 1;
    const VertexSet vs = enumerate_vertices(bivariate(d1, d2));
    c.expect(vs.vertices.size() == 4, "vertex count");
    if (vs.vertices.size() != 4) continue;
    const Matrix w[] = {
        Matrix{{0, 0}, {0, 0}},
        Matrix{{1 / d1, 0}, {0, 0}},
        Matrix{{0, 0}, {0, 1 / d2}},
        Matrix{{d2 / delta, 1 / delta}, {1 / delta, d1 / delta}},
    };
    const Vector z[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int v = 0; v < 4; ++v) {
      const double err = std::max(max_abs_diff(vs.vertices[v].w.dense(), w[v]),
                                  max_abs_diff(Matrix::column(vs.vertices[v].z), Matrix::column(z[v])));
      worst = std::max(worst, err);
      c.expect(err <= 1e-12, "d=(" + num(d1) + "," + num(d2) + ") vertex " + std::to_string(v));
    }
  }
  return c.done("12 vertices, max error " + num(worst));
}

// ---------------------------------------------------------------- 2

LinearModel printed_x3() {
  LinearModel lp;
  for (const char* name : {"z1", "z2", "z3", "W11", "W12", "W22"}) {
    lp.add_variable(name, -kInfinity, kInfinity);
  }
  lp.add_constraint("link", {{2, 1}, {4, -1}, {5, -1}}, Relation::kEqual, 0);
  lp.add_constraint("w12", {{4, 1}}, Relation::kGreaterEqual, 0);
  lp.add_constraint("w12w22", {{4, 1}, {5, -1}}, Relation::kLessEqual, 0);
  lp.add_constraint("w22w11", {{5, 1}, {3, -1}}, Relation::kLessEqual, 0);
  lp.add_constraint("max1", {{2, 1}, {0, 1}, {3, -1}, {5, -1}}, Relation::kLessEqual, 0);
  lp.add_constraint("max2", {{2, 1}, {1, 1}, {3, -1}, {5, -1}}, Relation::kLessEqual, 0);
  lp.add_constraint("sum", {{3, 1}, {5, 1}, {0, -1}, {1, -1}, {2, -1}}, Relation::kLessEqual, 0);
  lp.add_constraint("top", {{3, 1}, {4, 2}, {5, 1}, {2, -1}}, Relation::kLessEqual, 1);
  return lp;
}

Outcome three_variable_table() {
  Check c;
  const VertexSet vs = enumerate_vertices_factorized(FactorizedInstance(
      Matrix{{1, 0}, {1, 0}, {1, 1}}, {0, 0, 0}, {0, 0, 0}, SupportFamily::hypercube()));
  c.expect(vs.vertices.size() == 8, "vertex count");
  const Matrix half{{0.5, 0.5}, {0.5, 0.5}};
  const Matrix e11{{1, 0}, {0, 0}};
  const Matrix id = Matrix::identity(2);
  const Matrix expected[] = {Matrix(2, 2), e11, e11, e11, half, id, id, id};
  double worst = 0;
  for (int m = 0; m < 8 && m < static_cast<int>(vs.vertices.size()); ++m) {
    const double err = max_abs_diff(vs.vertices[m].w.dense(), expected[m]);
    worst = std::max(worst, err);
    c.expect(err <= 1e-12, "projection for mask " + std::to_string(m));
  }

  const LinearModel ours = facet_system_model(facets_from_vertices(vs), false);
  const LinearModel printed = printed_x3();
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  double lp_worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    LinearModel a = ours, b = printed;
    for (int j = 0; j < 6; ++j) {
      const double cj = g(rng);
      a.set_objective(j, cj);
      b.set_objective(j, cj);
    }
    const LpSolution sa = simplex_solve(a), sb = simplex_solve(b);
    const bool ok = sa.status == LpStatus::kOptimal && sb.status == LpStatus::kOptimal;
    c.expect(ok, "LP not optimal in trial " + std::to_string(trial));
    if (!ok) continue;
    lp_worst = std::max(lp_worst, std::abs(sa.value - sb.value));
    c.expect(std::abs(sa.value - sb.value) <= 1e-8, "LP values differ in trial " + std::to_string(trial));
  }
  return c.done("8 projections max error " + num(worst) + ", 50 LPs max diff " + num(lp_worst));
}

// ---------------------------------------------------------------- 3

Outcome padded_inverse_suite() {
  Check c;
  std::mt19937_64 rng(3);
  double trace_worst = 0, eig_worst = 0, ratio_worst = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + 2 * (trial % 3);
    const SymmetricMatrix q = testing::random_pd(n, 0.2, rng);
    const Matrix qinv = testing::gauss_inverse(q.dense());
    const double m = big_m_constants(q).m;
    const VertexSet vs = enumerate_vertices(
        MiqoInstance(q, Vector(n, 0.0), Vector(n, 0.0), SupportFamily::hypercube()));
    const TraceReport tr = verify_trace_equalities(q, vs);
    trace_worst = std::max(trace_worst, tr.max_violation);
    c.expect(tr.max_violation <= 1e-9, "trace equalities, trial " + std::to_string(trial));
    for (const PolytopeVertex& v : vs.vertices) {
      const double lam = testing::inertia_min_eigenvalue(qinv - v.w.dense());
      eig_worst = std::min(eig_worst, lam);
      c.expect(lam >= -1e-8, "order, trial " + std::to_string(trial));
      const Matrix prod = v.w.dense() * q.dense();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          ratio_worst = std::max(ratio_worst, std::abs(prod(i, j)) - m);
          c.expect(std::abs(prod(i, j)) <= m + 1e-8, "big-M bound, trial " + std::to_string(trial));
        }
      }
    }
  }
  return c.done("50 instances; trace " + num(trace_worst) + ", min eig " + num(eig_worst) +
                ", max(|offdiag|-M) " + num(ratio_worst));
}

// ---------------------------------------------------------------- 4

Outcome milo_exactness() {
  Check c;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    const SymmetricMatrix q = testing::random_pd(n, 0.1, rng);
    Vector a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = 2 * g(rng);
      b[i] = 0.5 * std::abs(g(rng));
    }
    const SupportFamily z = trial % 3 == 0   ? SupportFamily::hypercube()
                            : trial % 3 == 1 ? SupportFamily::cardinality_at_most((n + 1) / 2)
                                             : SupportFamily::choose_one();
    const MiqoInstance inst(q, a, b, z, 0.25);
    const BnbResult r = branch_and_bound(build_milo(inst), 60);
    const double opt = brute_force_solve(inst).value;
    c.expect(r.status == BnbStatus::kOptimal, "status " + std::string(bnb_status_name(r.status)));
    const double err = std::abs(r.value - opt) / (1 + std::abs(opt));
    worst = std::max(worst, err);
    c.expect(err <= 1e-6, "value mismatch, trial " + std::to_string(trial));
  }
  return c.done("100 instances, max relative error " + num(worst));
}

// ---------------------------------------------------------------- 5

// Smallest t at which separation stops finding a cut, by bisection.
double separated_supremum(const FacetSystem& fs, const Vector& x, const Vector& z, double hi) {
  double lo = 0.0;
  hi = std::max(hi, 1e-6);
  while (separate_cut(fs, {x, z, hi})) hi *= 2;
  for (int it = 0; it < 60 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (separate_cut(fs, {x, z, mid}) ? lo : hi) = mid;
  }
  return hi;
}

Outcome bivariate_cut_supremum() {
  Check c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double d1 = u(rng), d2 = (1.0 + u(rng)) / d1;
    const FacetSystem fs = hull_2x2_facets(d1, d2);
    const Vector x{g(rng), g(rng)};
    const double full = d1 * x[0] * x[0] - 2 * x[0] * x[1] + d2 * x[1] * x[1];
    const double e1 = std::abs(separated_supremum(fs, x, {1, 1}, full) - full);
    const double e2 = std::abs(separated_supremum(fs, {x[0], 0}, {1, 0}, 1) - d1 * x[0] * x[0]);
    const double e3 = separated_supremum(fs, {0, 0}, {0, 0}, 0);
    worst = std::max({worst, e1, e2, e3});
    c.expect(e1 <= 1e-5, "z=(1,1), trial " + std::to_string(trial));
    c.expect(e2 <= 1e-5, "z=(1,0), trial " + std::to_string(trial));
    c.expect(e3 <= 1e-5, "z=0, trial " + std::to_string(trial));
    // At the origin every cut in the family reads t * den >= 0.
    for (const Vector& y : testing::sample_multipliers(fs, 1, rng)) {
      const double at_zero = eval_2x2_cut(d1, d2, {y}, {{0, 0}, {0, 0}, 0.0});
      worst = std::max(worst, std::abs(at_zero));
      c.expect(std::abs(at_zero) <= 1e-12, "cut at the origin is " + num(at_zero));
    }
  }
  return c.done("100 draws, max error " + num(worst));
}

// ---------------------------------------------------------------- 6

Outcome special_structure_hulls() {
  Check c;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    Vector h(n), a(n), b(n);
    const double alpha = 2 * g(rng);
    for (int i = 0; i < n; ++i) {
      h[i] = g(rng);
      if (std::abs(h[i]) < 0.1) h[i] = 0.5;
      a[i] = alpha * h[i];
      b[i] = std::abs(g(rng));
    }
    Matrix f(n, 1);
    f.set_col(0, h);
    const double bf = brute_force_solve(FactorizedInstance(f, a, b, SupportFamily::hypercube())).value;
    const double err = std::abs(minimize_rank_one_hull(h, a, b).value - bf);
    worst = std::max(worst, err);
    c.expect(err <= 1e-5, "rank-one, trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const SymmetricMatrix q = testing::random_pd(n, 0.5, rng);
    Vector a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = std::abs(g(rng));
    }
    const double bf = brute_force_solve(MiqoInstance(q, a, b, SupportFamily::choose_one())).value;
    const double err = std::abs(minimize_choose_one_hull(q, a, b).value - bf);
    worst = std::max(worst, err);
    c.expect(err <= 1e-5, "choose-one, trial " + std::to_string(trial));
  }
  return c.done("50 rank-one + 50 choose-one, max error " + num(worst));
}

// ---------------------------------------------------------------- 7

Outcome technical_condition() {
  Check c;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const int k = 1 + trial % n;
    std::vector<std::uint64_t> masks = {(std::uint64_t{1} << n) - 1};
    for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
      if (rng() % 2) masks.push_back(m);
    }
    const FactorizedInstance inst(testing::random_matrix(n, k, rng), Vector(n, 0.0),
                                  Vector(n, 0.0), SupportFamily::explicit_list(masks));
    c.expect(check_technical_condition(inst), "full support, trial " + std::to_string(trial));
  }
  std::normal_distribution<double> g;
  for (int n = 2; n <= 4; ++n) {
    Matrix h(n, 1);
    for (int i = 0; i < n; ++i) h(i, 0) = (rng() % 2 ? 1 : -1) * (0.5 + std::abs(g(rng)));
    const FactorizedInstance inst(h, Vector(n, 0.0), Vector(n, 0.0), SupportFamily::choose_one());
    c.expect(!check_technical_condition(inst), "choose-one rank-one, n=" + std::to_string(n));
  }
  return c.done("20 holding, 3 failing as expected");
}

// ---------------------------------------------------------------- 8

Outcome cut_validity() {
  Check c;
  std::mt19937_64 rng(8);
  double worst = 0;
  int evaluations = 0;
  auto run = [&](const FacetSystem& fs, const VertexSet& vs, int draws, const std::string& tag) {
    const std::vector<SolutionPoint> points = testing::lifted_points(vs, 3, rng);
    for (const SolutionPoint& p : points) {
      c.expect(!separate_cut(fs, p).has_value(), tag + ": lifted vertex point separated");
    }
    for (const Vector& y : testing::sample_multipliers(fs, draws, rng)) {
      for (const SolutionPoint& p : points) {
        const double slack = eval_projection_cut(fs, {y}, p);
        worst = std::min(worst, slack);
        ++evaluations;
        c.expect(slack >= -1e-8, tag + ": negative slack " + num(slack));
      }
    }
  };
  run(hull_2x2_facets(2, 3), enumerate_vertices(bivariate(2, 3)), 250, "2x2");
  const VertexSet x3 = enumerate_vertices_factorized(FactorizedInstance(
      Matrix{{1, 0}, {1, 0}, {1, 1}}, {0, 0, 0}, {0, 0, 0}, SupportFamily::hypercube()));
  run(facets_from_vertices(x3), x3, 250, "X3");
  return c.done("500 multipliers, " + std::to_string(evaluations) + " evaluations, min slack " +
                num(worst));
}

// ---------------------------------------------------------------- 9

Outcome gmrf_behavior() {
  Check c;
  const double sigmas[] = {0.1, 0.3, 0.5};
  const double ks[] = {0.1, 0.3};
  std::vector<InstanceFile> files;
  for (double k : ks) {
    for (double s : sigmas) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) files.push_back(generate_gmrf_instance(5, 5, s, k, seed));
    }
  }
  // (a) root LP bound negative, optimum nonnegative.
  std::vector<double> opts;
  double max_root = -1e300, min_opt = 1e300;
  for (const InstanceFile& f : files) {
    const MiqoInstance inst = f.to_miqo();
    const LpSolution root = simplex_solve(relax(build_milo(inst)));
    const double opt = brute_force_solve(inst).value;
    opts.push_back(opt);
    max_root = std::max(max_root, root.value);
    min_opt = std::min(min_opt, opt);
    c.expect(root.status == LpStatus::kOptimal && root.value < 0, "(a) root bound for " + f.id);
    c.expect(opt >= 0, "(a) optimum for " + f.id);
  }
  // (b) B&B proves optimality within 60 s. Instances run in file order and
  // stop at the first one that misses the limit.
  int solved = 0;
  double slowest = 0;
  std::string stopped;
  for (size_t i = 0; i < files.size(); ++i) {
    const BnbResult r = branch_and_bound(build_milo(files[i].to_miqo()), 60);
    slowest = std::max(slowest, r.seconds);
    const bool ok = r.status == BnbStatus::kOptimal &&
                    std::abs(r.value - opts[i]) <= 1e-6 * (1 + std::abs(opts[i]));
    c.expect(ok, "(b) " + files[i].id + " " + bnb_status_name(r.status) + " after " +
                     std::to_string(r.nodes) + " nodes, gap to OPT " + num(r.best_bound - opts[i]));
    if (!ok) {
      stopped = ", stopped at " + files[i].id + " (" + std::to_string(files.size() - i - 1) +
                " not run)";
      break;
    }
    ++solved;
  }
  // (c) gap formula on hand values.
  c.expect(gap_report(-0.5, -1.0, "milo").gap_percent == 100.0, "(c) gap formula");
  Outcome o = c.done("");
  const std::string summary = "max root " + num(max_root) + ", min OPT " + num(min_opt) +
                              "; B&B solved " + std::to_string(solved) + "/" +
                              std::to_string(files.size()) + ", slowest " + num(slowest) + " s" +
                              stopped;
  o.detail = o.pass ? summary : summary + "; " + o.detail;
  return o;
}

// ---------------------------------------------------------------- 10

Outcome gamma_bound() {
  Check c;
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const SymmetricMatrix q = testing::random_pd(n, 0.5, rng);
    const VertexSet vs = enumerate_vertices(
        MiqoInstance(q, Vector(n, 0.0), Vector(n, 0.0), SupportFamily::hypercube()));
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const IndexSet t = i == j ? IndexSet({i}, n) : IndexSet({i, j}, n);
        Vector h(n, 0.0);
        for (int m : t.members()) h[m] = g(rng);
        const GammaBound gb = rank_one_gamma_bound(q, SupportFamily::hypercube(), t, h);
        bool tight = false;
        for (const PolytopeVertex& v : vs.vertices) {
          double cover = 0;
          for (int m : t.members()) cover += v.z[m];
          const double lhs = v.w.quadratic_form(h);
          c.expect(lhs <= gb.gamma * cover + 1e-9, "gamma invalid, trial " + std::to_string(trial));
          if (v.mask == gb.argmax) tight = lhs > (gb.gamma - 1e-6) * cover;
        }
        c.expect(tight || gb.gamma == 0, "gamma - 1e-6 holds at argmax, trial " + std::to_string(trial));
        ++checked;
      }
    }
  }
  return c.done(std::to_string(checked) + " (instance, T) pairs");
}

// ---------------------------------------------------------------- 11

LinearModel random_lp(std::mt19937_64& rng, int n, int rows) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LinearModel m;
  Vector x0(n);
  for (int j = 0; j < n; ++j) {
    const int kind = static_cast<int>(rng() % 4);
    double lo = -kInfinity, up = kInfinity;
    if (kind == 0) {
      lo = -1 - std::abs(g(rng));
      up = 1 + std::abs(g(rng));
    }
    if (kind == 1) lo = -1.0;
    if (kind == 2) up = 2.0;
    if (kind == 3) {
      lo = 0;
      up = 1;
    }
    m.add_variable("x" + std::to_string(j), lo, up);
    if (std::isfinite(lo)) {
      x0[j] = std::isfinite(up) ? 0.5 * (lo + up) : lo + 0.3;
    } else {
      x0[j] = std::isfinite(up) ? up - 0.3 : u(rng);
    }
    m.set_objective(j, g(rng));
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> t;
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rng() % 3 == 0) continue;
      const double cj = g(rng);
      t.push_back({j, cj});
      act += cj * x0[j];
    }
    const int rel = static_cast<int>(rng() % 5);
    const std::string name = "r" + std::to_string(i);
    if (rel == 0) {
      m.add_constraint(name, t, Relation::kEqual, act);
    } else if (rel <= 2) {
      m.add_constraint(name, t, Relation::kLessEqual, act + std::abs(g(rng)));
    } else {
      m.add_constraint(name, t, Relation::kGreaterEqual, act - std::abs(g(rng)));
    }
  }
  for (int j = 0; j < n; ++j) {
    m.add_constraint("bu" + std::to_string(j), {{j, 1}}, Relation::kLessEqual, 5);
    m.add_constraint("bl" + std::to_string(j), {{j, 1}}, Relation::kGreaterEqual, -5);
  }
  return m;
}

LinearModel random_file_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 12), nrows(0, 10), pick(0, 5);
  std::normal_distribution<double> gauss(0.0, 3.0);
  LinearModel m;
  const int n = nvars(rng);
  for (int j = 0; j < n; ++j) {
    const std::string name = "v" + std::to_string(j);
    switch (pick(rng)) {
      case 0: m.add_variable(name, 0, 1, true); break;
      case 1: m.add_variable(name, -kInfinity, kInfinity); break;
      case 2: m.add_variable(name, gauss(rng) - 5, kInfinity); break;
      case 3: m.add_variable(name, -kInfinity, gauss(rng)); break;
      case 4: m.add_variable(name, -3, 7, true); break;
      default: {
        const double lo = gauss(rng);
        m.add_variable(name, lo, lo + std::abs(gauss(rng)));
      }
    }
    if (pick(rng) < 4) m.set_objective(j, gauss(rng));
  }
  m.set_objective_constant(pick(rng) < 2 ? 0.0 : gauss(rng) / 7.0);
  std::uniform_int_distribution<int> var(0, n - 1), rel(0, 2);
  const int rows = nrows(rng);
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    const int k = 1 + var(rng);
    for (int t = 0; t < k; ++t) terms.push_back({var(rng), gauss(rng) * 1e-3 * (1 + pick(rng))});
    m.add_constraint("r" + std::to_string(i), terms, static_cast<Relation>(rel(rng)), gauss(rng));
  }
  return m;
}

Outcome engine_sanity() {
  Check c;
  std::mt19937_64 rng(11);
  double dual_worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const int rows = 1 + static_cast<int>(rng() % 12);
    const LinearModel m = random_lp(rng, n, rows);
    const LpSolution s = simplex_solve(m);
    c.expect(s.status == LpStatus::kOptimal, "LP status, trial " + std::to_string(trial));
    if (s.status != LpStatus::kOptimal) continue;
    const double gap = std::abs(lagrangian_dual_value(m, s.dual, 1e-9) - s.value);
    dual_worst = std::max(dual_worst, gap / (1 + std::abs(s.value)));
    c.expect(gap <= 1e-7 * (1 + std::abs(s.value)), "primal != dual, trial " + std::to_string(trial));
  }

  std::normal_distribution<double> g(0.3, 1.0);
  std::uniform_real_distribution<double> cap(0.0, 6.0), u(0.0, 1.0);
  double vi_worst = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    Vector v(n);
    for (double& x : v) x = g(rng);
    const double r = cap(rng);
    const Vector p = capped_simplex_project(v, r);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    c.expect(sum <= r + 1e-10, "projection exceeds the cap");
    for (int k = 0; k < 50; ++k) {
      Vector w(n);
      for (double& x : w) x = u(rng);
      const double s = std::accumulate(w.begin(), w.end(), 0.0);
      if (s > r) {
        for (double& x : w) x *= r / s;
      }
      double ip = 0.0;
      for (int i = 0; i < n; ++i) ip += (v[i] - p[i]) * (w[i] - p[i]);
      vi_worst = std::max(vi_worst, ip);
      c.expect(ip <= 1e-9, "variational inequality, trial " + std::to_string(trial));
    }
  }

  for (int trial = 0; trial < 20; ++trial) {
    const LinearModel m = random_file_model(rng);
    const std::string text = format_lp(m);
    const LinearModel back = parse_lp(text);
    c.expect(back == m && format_lp(back) == text, "LP roundtrip, model " + std::to_string(trial));
  }
  return c.done("200 LPs max rel duality gap " + num(dual_worst) + ", 100 projections max <v-p,w-p> " +
                num(vi_worst) + ", 20 LP files stable");
}

struct Criterion {
  const char* id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace hullkit

int main() {
  using namespace hullkit;
  const std::vector<Criterion> criteria = {
      {"1", "bivariate vertex table", 1, bivariate_vertex_table},
      {"2", "three-variable projection table and facets", 5, three_variable_table},
      {"3", "trace equalities, order and big-M bounds", 60, padded_inverse_suite},
      {"4", "MILO branch-and-bound equals brute force", 300, milo_exactness},
      {"5", "bivariate cut supremum", 30, bivariate_cut_supremum},
      {"6", "rank-one and choose-one hull minimization", 120, special_structure_hulls},
      {"7", "technical condition", 10, technical_condition},
      {"8", "projection cut validity", 60, cut_validity},
      {"9", "5x5 GMRF root bounds, B&B and gap formula", 600, gmrf_behavior},
      {"10", "rank-one decomposition bound", 60, gamma_bound},
      {"11", "simplex duality, capped projection, LP files", 60, engine_sanity},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + num(c.limit_seconds) + " s budget";
    }
    failed += !o.pass;
    std::printf("%s [%s] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
