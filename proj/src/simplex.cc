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

#include "hullkit/simplex.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hullkit/error.h"
#include "sparse_lu.h"

namespace hullkit {

namespace {

struct Eta {
  int r;
  double pivot;
  std::vector<int> idx;  // excludes r
  std::vector<double> val;
};

}  // namespace

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kIterationLimit: return "IterationLimit";
  }
  return "?";
}

struct SimplexSolver::Impl {
  SimplexOptions opt;
  int n = 0;  // structural columns
  int m = 0;  // rows
  std::vector<int> col_start;
  std::vector<int> row_idx;
  std::vector<double> val;
  Vector cost;
  double constant = 0.0;
  Vector lb, ub;  // n + m entries

  std::vector<int> head;  // basis position -> variable
  std::vector<Basis::Status> status;
  Vector x;

  // Factor of the basis at the last refactorization.
  std::vector<int> k_cols, k_pos, k_rows, row_in_kernel, slack_pos;
  SparseLu lu;
  int p = 0;
  std::vector<Eta> etas;
  bool dirty = true;
  bool factor_valid = false;

  struct State {
    std::vector<int> head;
    std::vector<Basis::Status> status;
    Vector x;
    std::vector<int> k_cols, k_pos, k_rows, row_in_kernel, slack_pos;
    SparseLu lu;
    int p;
    std::vector<Eta> etas;
    bool dirty, factor_valid;
  };
  State save() const {
    return {head, status, x, k_cols, k_pos, k_rows, row_in_kernel, slack_pos,
            lu, p, etas, dirty, factor_valid};
  }
  void load(const State& st) {
    head = st.head;
    status = st.status;
    x = st.x;
    k_cols = st.k_cols;
    k_pos = st.k_pos;
    k_rows = st.k_rows;
    row_in_kernel = st.row_in_kernel;
    slack_pos = st.slack_pos;
    lu = st.lu;
    p = st.p;
    etas = st.etas;
    dirty = st.dirty;
    factor_valid = st.factor_valid;
  }

  // Scratch.
  Vector work_m, work_p, work_p2;

  void init(const LinearModel& model) {
    n = model.num_variables();
    m = model.num_constraints();
    std::vector<std::vector<std::pair<int, double>>> cols(n);
    for (int i = 0; i < m; ++i) {
      for (const Term& t : model.constraint(i).terms) {
        if (t.coef != 0.0) cols[t.var].emplace_back(i, t.coef);
      }
    }
    col_start.assign(n + 1, 0);
    for (int j = 0; j < n; ++j) {
      col_start[j + 1] = col_start[j] + static_cast<int>(cols[j].size());
      for (auto [i, v] : cols[j]) {
        row_idx.push_back(i);
        val.push_back(v);
      }
    }
    cost = model.objective();
    constant = model.objective_constant();
    lb.resize(n + m);
    ub.resize(n + m);
    for (int j = 0; j < n; ++j) {
      lb[j] = model.variable(j).lower;
      ub[j] = model.variable(j).upper;
    }
    for (int i = 0; i < m; ++i) {
      const Constraint& c = model.constraint(i);
      lb[n + i] = c.relation == Relation::kLessEqual ? -kInfinity : c.rhs;
      ub[n + i] = c.relation == Relation::kGreaterEqual ? kInfinity : c.rhs;
    }
    work_m.assign(m, 0.0);
    slack_basis();
  }

  void slack_basis() {
    status.assign(n + m, Basis::kAtLower);
    head.resize(m);
    for (int i = 0; i < m; ++i) {
      head[i] = n + i;
      status[n + i] = Basis::kBasic;
    }
    x.assign(n + m, 0.0);
    for (int j = 0; j < n; ++j) place_nonbasic(j, Basis::kAtLower);
    dirty = true;
    factor_valid = false;
  }

  // Puts nonbasic j at the bound named by `want`, falling back to whichever
  // bound is finite.
  void place_nonbasic(int j, Basis::Status want) {
    const bool lo = std::isfinite(lb[j]);
    const bool up = std::isfinite(ub[j]);
    Basis::Status s = want;
    if (s == Basis::kAtLower && !lo) s = up ? Basis::kAtUpper : Basis::kFreeZero;
    if (s == Basis::kAtUpper && !up) s = lo ? Basis::kAtLower : Basis::kFreeZero;
    if (s == Basis::kFreeZero && (lo || up)) s = lo ? Basis::kAtLower : Basis::kAtUpper;
    if (s == Basis::kBasic) s = lo ? Basis::kAtLower : (up ? Basis::kAtUpper : Basis::kFreeZero);
    status[j] = s;
    x[j] = s == Basis::kAtLower ? lb[j] : s == Basis::kAtUpper ? ub[j] : 0.0;
  }

  // ---------------------------------------------------------- factorization

  // Returns the kernel columns without a usable pivot.
  std::vector<int> factor_kernel() {
    k_cols.clear();
    k_pos.clear();
    k_rows.clear();
    slack_pos.assign(m, -1);
    row_in_kernel.assign(m, -1);
    for (int r = 0; r < m; ++r) {
      if (head[r] < n) {
        k_cols.push_back(head[r]);
        k_pos.push_back(r);
      } else {
        slack_pos[head[r] - n] = r;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (slack_pos[i] < 0) {
        row_in_kernel[i] = static_cast<int>(k_rows.size());
        k_rows.push_back(i);
      }
    }
    p = static_cast<int>(k_cols.size());
    std::vector<SparseLu::Column> columns(p);
    double scale = 0.0;
    for (int c = 0; c < p; ++c) {
      const int j = k_cols[c];
      for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
        const int k = row_in_kernel[row_idx[e]];
        if (k >= 0) {
          columns[c].emplace_back(k, val[e]);
          scale = std::max(scale, std::abs(val[e]));
        }
      }
    }
    std::vector<int> dependent, free_rows;
    lu.factor(p, columns, opt.breakdown_pivot * std::max(1.0, scale), dependent, free_rows);
    for (std::size_t d = 0; d < dependent.size(); ++d) {
      const int c = dependent[d];
      const int i = k_rows[free_rows[d]];
      head[k_pos[c]] = n + i;
      status[n + i] = Basis::kBasic;
      place_nonbasic(k_cols[c], Basis::kAtLower);
    }
    etas.clear();
    return dependent;
  }

  void refactor() {
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (factor_kernel().empty()) {
        factor_valid = true;
        recompute_basics();
        return;
      }
    }
    throw Error(ErrorCode::kNumericalBreakdown, "basis repair failed");
  }

  void kernel_solve(Vector& b) {
    lu.solve(b, work_p2);
    b.swap(work_p2);
  }

  void kernel_solve_transpose(Vector& r) {
    lu.solve_transpose(r, work_p2);
    r.swap(work_p2);
  }

  // w = B^{-1} a, indexed by basis position. `a` is dense over rows.
  void ftran(const Vector& a, Vector& w) {
    w.assign(m, 0.0);
    Vector& b = work_p;
    b.assign(p, 0.0);
    for (int k = 0; k < p; ++k) b[k] = a[k_rows[k]];
    if (p > 0) kernel_solve(b);
    Vector& acc = work_m;
    for (int i = 0; i < m; ++i) acc[i] = slack_pos[i] >= 0 ? -a[i] : 0.0;
    for (int c = 0; c < p; ++c) {
      w[k_pos[c]] = b[c];
      if (b[c] == 0.0) continue;
      const int j = k_cols[c];
      for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
        const int i = row_idx[e];
        if (slack_pos[i] >= 0) acc[i] += val[e] * b[c];
      }
    }
    for (int i = 0; i < m; ++i) {
      if (slack_pos[i] >= 0) w[slack_pos[i]] = acc[i];
    }
    for (const Eta& e : etas) {
      const double wr = w[e.r];
      if (wr == 0.0) continue;
      const double t = wr / e.pivot;
      w[e.r] = t;
      for (std::size_t k = 0; k < e.idx.size(); ++k) w[e.idx[k]] -= e.val[k] * t;
    }
  }

  // y^T = d^T B^{-1} with d indexed by basis position.
  void btran(Vector d, Vector& y) {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = d[it->r];
      for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * d[it->idx[k]];
      d[it->r] = s / it->pivot;
    }
    y.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      if (slack_pos[i] >= 0) y[i] = -d[slack_pos[i]];
    }
    Vector& r = work_p;
    r.assign(p, 0.0);
    for (int c = 0; c < p; ++c) {
      const int j = k_cols[c];
      double s = d[k_pos[c]];
      for (int e = col_start[j]; e < col_start[j + 1]; ++e) {
        const int i = row_idx[e];
        if (slack_pos[i] >= 0) s -= y[i] * val[e];
      }
      r[c] = s;
    }
    if (p > 0) kernel_solve_transpose(r);
    for (int k = 0; k < p; ++k) y[k_rows[k]] = r[k];
  }

  void column(int q, Vector& a) const {
    a.assign(m, 0.0);
    if (q >= n) {
      a[q - n] = -1.0;
      return;
    }
    for (int e = col_start[q]; e < col_start[q + 1]; ++e) a[row_idx[e]] = val[e];
  }

  void recompute_basics() {
    Vector rhs(m, 0.0);
    for (int j = 0; j < n + m; ++j) {
      if (status[j] == Basis::kBasic || x[j] == 0.0) continue;
      if (j >= n) {
        rhs[j - n] += x[j];
      } else {
        for (int e = col_start[j]; e < col_start[j + 1]; ++e) rhs[row_idx[e]] -= val[e] * x[j];
      }
    }
    Vector w;
    ftran(rhs, w);
    for (int r = 0; r < m; ++r) x[head[r]] = w[r];
    dirty = false;
  }

  double reduced_cost(int j, const Vector& y, double cj) const {
    if (j >= n) return y[j - n];
    double s = cj;
    for (int e = col_start[j]; e < col_start[j + 1]; ++e) s -= y[row_idx[e]] * val[e];
    return s;
  }

  double infeasibility(int j) const {
    const double tol = opt.feasibility_tol;
    if (x[j] < lb[j] - tol) return lb[j] - x[j];
    if (x[j] > ub[j] + tol) return x[j] - ub[j];
    return 0.0;
  }

  // Nonbasic j may keep reduced cost dj without losing optimality.
  bool dual_ok(int j, double dj, double tol) const {
    if (lb[j] == ub[j]) return true;
    switch (status[j]) {
      case Basis::kAtLower: return dj >= -tol;
      case Basis::kAtUpper: return dj <= tol;
      case Basis::kFreeZero: return std::abs(dj) <= tol;
      default: return true;
    }
  }

  void full_reduced_costs(Vector& d, Vector& cb, Vector& y) {
    for (int r = 0; r < m; ++r) cb[r] = head[r] < n ? cost[head[r]] : 0.0;
    btran(cb, y);
    for (int j = 0; j < n + m; ++j) {
      d[j] = status[j] == Basis::kBasic ? 0.0 : reduced_cost(j, y, j < n ? cost[j] : 0.0);
    }
  }

  bool dual_feasible(const Vector& d) const {
    for (int j = 0; j < n + m; ++j) {
      if (status[j] != Basis::kBasic && !dual_ok(j, d[j], opt.optimality_tol)) return false;
    }
    return true;
  }

  // Dual simplex from a dual feasible basis. Returns false when the primal
  // loop should take over (dual infeasibility, stalling, or a feasible point
  // that the primal loop only needs to confirm).
  bool dual_loop(LpSolution& out, std::int64_t& iter, std::int64_t max_iter) {
    Vector d(n + m), cb(m), y, rho, alpha, a, e(m), row(n + m);
    full_reduced_costs(d, cb, y);
    if (!dual_feasible(d)) return false;
    const std::int64_t stall_cap = iter + 20LL * (n + m);
    const double ftol = opt.feasibility_tol;
    bool retried = false;
    for (;;) {
      if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
        refactor();
        full_reduced_costs(d, cb, y);
        if (!dual_feasible(d)) return false;
      }
      if (iter >= max_iter || (opt.deadline && (iter & 15) == 0 &&
                               std::chrono::steady_clock::now() > *opt.deadline)) {
        out.status = LpStatus::kIterationLimit;
        return true;
      }
      if (iter >= stall_cap) return false;

      int r = -1;
      double worst = ftol;
      for (int k = 0; k < m; ++k) {
        const int b = head[k];
        const double v = std::max(lb[b] - x[b], x[b] - ub[b]);
        if (v > worst) {
          worst = v;
          r = k;
        }
      }
      if (r < 0) {
        if (dirty) {
          recompute_basics();
          continue;
        }
        return false;
      }
      const int b = head[r];
      const bool below = x[b] < lb[b];
      const double target = below ? lb[b] : ub[b];

      std::fill(e.begin(), e.end(), 0.0);
      e[r] = 1.0;
      btran(e, rho);
      // x_b moves by -row[j] * step_j; it must rise when below.
      int q = -1;
      double bound_ratio = kInfinity;
      for (int j = 0; j < n + m; ++j) {
        row[j] = 0.0;
        if (status[j] == Basis::kBasic || lb[j] == ub[j]) continue;
        double arj;
        if (j >= n) {
          arj = -rho[j - n];
        } else {
          arj = 0.0;
          for (int k = col_start[j]; k < col_start[j + 1]; ++k) arj += rho[row_idx[k]] * val[k];
        }
        row[j] = arj;
        if (std::abs(arj) < opt.ratio_pivot_tol) continue;
        const double s = below ? -arj : arj;  // progress of x_b per unit increase of x_j
        const Basis::Status st = status[j];
        const bool up_ok = st == Basis::kAtLower || st == Basis::kFreeZero;
        const bool down_ok = st == Basis::kAtUpper || st == Basis::kFreeZero;
        if (!((s > 0.0 && up_ok) || (s < 0.0 && down_ok))) continue;
        bound_ratio = std::min(bound_ratio, (std::abs(d[j]) + opt.optimality_tol) / std::abs(arj));
      }
      double best_abs = 0.0;
      for (int j = 0; j < n + m; ++j) {
        const double arj = row[j];
        if (arj == 0.0 || std::abs(arj) < opt.ratio_pivot_tol) continue;
        const double s = below ? -arj : arj;
        const Basis::Status st = status[j];
        const bool up_ok = st == Basis::kAtLower || st == Basis::kFreeZero;
        const bool down_ok = st == Basis::kAtUpper || st == Basis::kFreeZero;
        if (!((s > 0.0 && up_ok) || (s < 0.0 && down_ok))) continue;
        if (std::abs(d[j]) / std::abs(arj) <= bound_ratio && std::abs(arj) > best_abs) {
          best_abs = std::abs(arj);
          q = j;
        }
      }
      if (q < 0) {
        if (!retried && (dirty || !etas.empty())) {
          retried = true;
          refactor();
          full_reduced_costs(d, cb, y);
          if (!dual_feasible(d)) return false;
          continue;
        }
        out.status = LpStatus::kInfeasible;
        return true;
      }
      retried = false;

      column(q, a);
      ftran(a, alpha);
      const double arq = alpha[r];
      if (std::abs(arq) < opt.breakdown_pivot ||
          std::abs(arq - row[q]) > 1e-7 * std::max(1.0, std::abs(arq))) {
        if (etas.empty() && !dirty) return false;
        refactor();
        full_reduced_costs(d, cb, y);
        if (!dual_feasible(d)) return false;
        continue;
      }
      ++iter;
      dirty = true;
      const double theta_d = d[q] / arq;
      for (int j = 0; j < n + m; ++j) {
        if (row[j] != 0.0) d[j] -= theta_d * row[j];
      }
      d[q] = 0.0;
      d[b] = -theta_d;
      const double t = (x[b] - target) / arq;
      for (int k = 0; k < m; ++k) x[head[k]] -= t * alpha[k];
      x[q] += t;
      x[b] = target;
      status[b] = below ? Basis::kAtLower : Basis::kAtUpper;
      head[r] = q;
      status[q] = Basis::kBasic;
      Eta eta;
      eta.r = r;
      eta.pivot = arq;
      for (int k = 0; k < m; ++k) {
        if (k != r && std::abs(alpha[k]) > 1e-14) {
          eta.idx.push_back(k);
          eta.val.push_back(alpha[k]);
        }
      }
      etas.push_back(std::move(eta));
    }
  }

  LpSolution solve() {
    LpSolution out;
    const std::int64_t max_iter =
        opt.max_iterations > 0 ? opt.max_iterations : 100LL * (n + m) + 1000;
    if (!factor_valid) {
      refactor();
    } else if (dirty) {
      recompute_basics();
    }
    std::int64_t iter = 0;
    int degenerate_run = 0;
    Vector d_b(m), y, alpha, a;
    bool decided = opt.dual_warm_start && dual_loop(out, iter, max_iter);
    for (; !decided;) {
      if (static_cast<int>(etas.size()) >= opt.refactor_interval) refactor();
      if (iter >= max_iter ||
          (opt.deadline && (iter & 15) == 0 &&
           std::chrono::steady_clock::now() > *opt.deadline)) {
        out.status = LpStatus::kIterationLimit;
        break;
      }

      bool phase1 = false;
      for (int r = 0; r < m; ++r) {
        const int b = head[r];
        const double inf = infeasibility(b);
        d_b[r] = 0.0;
        if (inf > 0.0) {
          phase1 = true;
          d_b[r] = x[b] < lb[b] ? -1.0 : 1.0;
        }
      }
      if (!phase1) {
        for (int r = 0; r < m; ++r) d_b[r] = head[r] < n ? cost[head[r]] : 0.0;
      }
      btran(d_b, y);

      const bool bland = degenerate_run >= opt.degenerate_limit;
      int q = -1;
      double best = 0.0;
      double dq = 0.0;
      for (int j = 0; j < n + m; ++j) {
        const Basis::Status s = status[j];
        if (s == Basis::kBasic || lb[j] == ub[j]) continue;
        const double cj = phase1 || j >= n ? 0.0 : cost[j];
        const double dj = reduced_cost(j, y, cj);
        double score = 0.0;
        if (s == Basis::kAtLower && dj < -opt.optimality_tol) score = -dj;
        if (s == Basis::kAtUpper && dj > opt.optimality_tol) score = dj;
        if (s == Basis::kFreeZero && std::abs(dj) > opt.optimality_tol) score = std::abs(dj);
        if (score > best) {
          best = score;
          q = j;
          dq = dj;
          if (bland) break;
        }
      }

      if (q < 0) {
        if (dirty) {
          recompute_basics();
          continue;
        }
        out.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
        break;
      }

      const double dir = dq < 0.0 ? 1.0 : -1.0;
      column(q, a);
      ftran(a, alpha);

      // Harris ratio test: bound the step with tolerance-relaxed bounds, then
      // take the largest pivot whose exact ratio fits under that bound.
      const double ftol = opt.feasibility_tol;
      auto target_of = [&](int r, double rate, double& target) {
        const int b = head[r];
        if (rate < 0.0) {
          if (phase1 && x[b] > ub[b] + ftol) {
            target = ub[b];
          } else if (phase1 && x[b] < lb[b] - ftol) {
            return false;
          } else {
            target = lb[b];
          }
        } else {
          if (phase1 && x[b] < lb[b] - ftol) {
            target = lb[b];
          } else if (phase1 && x[b] > ub[b] + ftol) {
            return false;
          } else {
            target = ub[b];
          }
        }
        return std::isfinite(target);
      };
      double bound = kInfinity;
      for (int r = 0; r < m; ++r) {
        const double ar = alpha[r];
        if (std::abs(ar) < opt.ratio_pivot_tol) continue;
        const double rate = -dir * ar;
        double target;
        if (!target_of(r, rate, target)) continue;
        const double relaxed = target + (rate < 0.0 ? -ftol : ftol);
        bound = std::min(bound, std::max(0.0, (relaxed - x[head[r]]) / rate));
      }
      double theta = kInfinity;
      int leave = -1;
      double leave_target = 0.0;
      double leave_alpha = 0.0;
      if (std::isfinite(bound)) {
        for (int r = 0; r < m; ++r) {
          const double ar = alpha[r];
          if (std::abs(ar) < opt.ratio_pivot_tol) continue;
          const double rate = -dir * ar;
          double target;
          if (!target_of(r, rate, target)) continue;
          const double t = std::max(0.0, (target - x[head[r]]) / rate);
          if (t > bound) continue;
          const bool take = leave < 0 || (bland ? head[r] < head[leave]
                                                : std::abs(ar) > std::abs(leave_alpha));
          if (take) {
            theta = t;
            leave = r;
            leave_target = target;
            leave_alpha = ar;
          }
        }
      }
      const double flip =
          std::isfinite(lb[q]) && std::isfinite(ub[q]) ? ub[q] - lb[q] : kInfinity;

      if (leave < 0 && !std::isfinite(flip)) {
        if (phase1) {
          if (dirty || !etas.empty()) {
            refactor();
            continue;
          }
          throw Error(ErrorCode::kNumericalBreakdown, "phase 1 ray");
        }
        out.status = LpStatus::kUnbounded;
        break;
      }
      ++iter;
      dirty = true;
      if (flip <= theta) {
        for (int r = 0; r < m; ++r) x[head[r]] -= dir * flip * alpha[r];
        place_nonbasic(q, status[q] == Basis::kAtLower ? Basis::kAtUpper : Basis::kAtLower);
        degenerate_run = 0;
        continue;
      }
      if (std::abs(leave_alpha) < opt.breakdown_pivot) {
        throw Error(ErrorCode::kNumericalBreakdown, "pivot below tolerance");
      }
      degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;
      for (int r = 0; r < m; ++r) x[head[r]] -= dir * theta * alpha[r];
      const int b = head[leave];
      const double xq = x[q] + dir * theta;
      x[b] = leave_target;
      status[b] = leave_target == lb[b] ? Basis::kAtLower : Basis::kAtUpper;
      head[leave] = q;
      status[q] = Basis::kBasic;
      x[q] = xq;
      Eta e;
      e.r = leave;
      e.pivot = alpha[leave];
      for (int r = 0; r < m; ++r) {
        if (r != leave && std::abs(alpha[r]) > 1e-14) {
          e.idx.push_back(r);
          e.val.push_back(alpha[r]);
        }
      }
      etas.push_back(std::move(e));
    }

    out.iterations = iter;
    out.primal.assign(x.begin(), x.begin() + n);
    out.value = constant;
    for (int j = 0; j < n; ++j) out.value += cost[j] * x[j];
    if (out.status == LpStatus::kOptimal) {
      for (int r = 0; r < m; ++r) d_b[r] = head[r] < n ? cost[head[r]] : 0.0;
      btran(d_b, y);
      out.dual = y;
      out.reduced_costs.resize(n);
      for (int j = 0; j < n; ++j) {
        out.reduced_costs[j] = status[j] == Basis::kBasic ? 0.0 : reduced_cost(j, y, cost[j]);
      }
    }
    out.basis.status = status;
    return out;
  }
};

SimplexSolver::SimplexSolver(const LinearModel& model, SimplexOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->opt = options;
  impl_->init(model);
}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

int SimplexSolver::num_columns() const { return impl_->n; }
int SimplexSolver::num_rows() const { return impl_->m; }
double SimplexSolver::column_lower(int j) const { return impl_->lb.at(j); }
double SimplexSolver::column_upper(int j) const { return impl_->ub.at(j); }

void SimplexSolver::set_column_bounds(int j, double lower, double upper) {
  if (j < 0 || j >= impl_->n || std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvalidParameters, "bad column bounds");
  }
  Impl& s = *impl_;
  s.lb[j] = lower;
  s.ub[j] = upper;
  if (s.status[j] != Basis::kBasic) s.place_nonbasic(j, s.status[j]);
  s.dirty = true;
}

void SimplexSolver::reset_basis() { impl_->slack_basis(); }

void SimplexSolver::set_basis(const Basis& basis) {
  Impl& s = *impl_;
  if (static_cast<int>(basis.status.size()) != s.n + s.m) {
    throw Error(ErrorCode::kDimensionMismatch, "basis has wrong length");
  }
  const int basic = static_cast<int>(
      std::count(basis.status.begin(), basis.status.end(), Basis::kBasic));
  if (basic != s.m) throw Error(ErrorCode::kDimensionMismatch, "basis has wrong size");
  s.head.clear();
  for (int j = 0; j < s.n + s.m; ++j) {
    if (basis.status[j] == Basis::kBasic) {
      s.status[j] = Basis::kBasic;
      s.head.push_back(j);
    } else {
      s.place_nonbasic(j, basis.status[j]);
    }
  }
  s.dirty = true;
  s.factor_valid = false;
}

void SimplexSolver::factorize() {
  if (!impl_->factor_valid) impl_->refactor();
}

class SimplexSolver::State {
 public:
  Impl::State s;
};

std::shared_ptr<const SimplexSolver::State> SimplexSolver::save_state() const {
  auto st = std::make_shared<State>();
  st->s = impl_->save();
  return st;
}

void SimplexSolver::restore_state(const State& state) {
  Impl& s = *impl_;
  s.load(state.s);
  for (int j = 0; j < s.n + s.m; ++j) {
    if (s.status[j] != Basis::kBasic) s.place_nonbasic(j, s.status[j]);
  }
  s.dirty = true;
}

LpSolution SimplexSolver::solve() { return impl_->solve(); }

LpSolution simplex_solve(const LinearModel& model, const SimplexOptions& options) {
  SimplexSolver solver(model, options);
  return solver.solve();
}

double lagrangian_dual_value(const LinearModel& model, const Vector& y,
                             double zero_tol) {
  if (static_cast<int>(y.size()) != model.num_constraints()) {
    throw Error(ErrorCode::kDimensionMismatch, "dual vector has wrong length");
  }
  Vector d = model.objective();
  for (int i = 0; i < model.num_constraints(); ++i) {
    for (const Term& t : model.constraint(i).terms) d[t.var] -= y[i] * t.coef;
  }
  auto box_min = [&](double coef, double lo, double up) {
    if (coef == 0.0) return 0.0;
    const double v = coef > 0.0 ? lo : up;
    if (std::isfinite(v)) return coef * v;
    return std::abs(coef) <= zero_tol ? 0.0 : -kInfinity;
  };
  double total = model.objective_constant();
  for (int j = 0; j < model.num_variables(); ++j) {
    total += box_min(d[j], model.variable(j).lower, model.variable(j).upper);
  }
  for (int i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraint(i);
    const double lo = c.relation == Relation::kLessEqual ? -kInfinity : c.rhs;
    const double up = c.relation == Relation::kGreaterEqual ? kInfinity : c.rhs;
    total += box_min(y[i], lo, up);
  }
  return total;
}

}  // namespace hullkit
