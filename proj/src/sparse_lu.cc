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

#include "sparse_lu.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hullkit {

namespace {

constexpr double kThreshold = 0.1;  // partial pivoting threshold

double* find(std::vector<std::pair<int, double>>& row, int col) {
  for (auto& e : row) {
    if (e.first == col) return &e.second;
  }
  return nullptr;
}

}  // namespace

bool SparseLu::factor(int p, const std::vector<Column>& columns, double tiny,
                      std::vector<int>& dependent, std::vector<int>& free_rows) {
  p_ = p;
  steps_.clear();
  l_.clear();
  u_.clear();
  dependent.clear();
  free_rows.clear();

  std::vector<std::vector<std::pair<int, double>>> rows(p);
  std::vector<std::vector<int>> col_rows(p);  // may hold stale entries
  for (int c = 0; c < p; ++c) {
    for (auto [r, v] : columns[c]) {
      if (v == 0.0) continue;
      if (double* e = find(rows[r], c)) {
        *e += v;
      } else {
        rows[r].emplace_back(c, v);
        col_rows[c].push_back(r);
      }
    }
  }
  std::vector<char> row_done(p, 0), col_done(p, 0);

  for (int step = 0; step < p; ++step) {
    // Refresh column patterns and magnitudes.
    int best_r = -1, best_c = -1;
    double best_abs = 0.0;
    std::int64_t best_cost = INT64_MAX;
    for (int c = 0; c < p && best_cost > 0; ++c) {
      if (col_done[c]) continue;
      auto& cr = col_rows[c];
      double colmax = 0.0;
      std::size_t keep = 0;
      for (int r : cr) {
        if (row_done[r]) continue;
        const double* e = find(rows[r], c);
        if (!e) continue;
        cr[keep++] = r;
        colmax = std::max(colmax, std::abs(*e));
      }
      cr.resize(keep);
      if (colmax <= tiny) continue;
      const std::int64_t ccount = static_cast<std::int64_t>(cr.size()) - 1;
      for (int r : cr) {
        const double a = std::abs(*find(rows[r], c));
        if (a < kThreshold * colmax || a <= tiny) continue;
        const std::int64_t cost = ccount * (static_cast<std::int64_t>(rows[r].size()) - 1);
        if (cost < best_cost || (cost == best_cost && a > best_abs)) {
          best_cost = cost;
          best_abs = a;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best_r < 0) break;

    const int pr = best_r, pc = best_c;
    const double piv = *find(rows[pr], pc);
    Step s{pr, pc, piv, static_cast<int>(l_.size()), 0, 0, 0};
    for (int r : col_rows[pc]) {
      if (r == pr || row_done[r]) continue;
      auto& row = rows[r];
      auto it = std::find_if(row.begin(), row.end(), [&](auto& e) { return e.first == pc; });
      if (it == row.end()) continue;
      const double mult = it->second / piv;
      row.erase(it);
      l_.emplace_back(r, mult);
      for (auto [c, v] : rows[pr]) {
        if (c == pc) continue;
        if (double* e = find(row, c)) {
          *e -= mult * v;
        } else {
          row.emplace_back(c, -mult * v);
          col_rows[c].push_back(r);
        }
      }
    }
    s.l_end = static_cast<int>(l_.size());
    s.u_begin = static_cast<int>(u_.size());
    for (auto [c, v] : rows[pr]) {
      if (c != pc) u_.emplace_back(c, v);
    }
    s.u_end = static_cast<int>(u_.size());
    steps_.push_back(s);
    row_done[pr] = 1;
    col_done[pc] = 1;
    rows[pr].clear();
    // Entries of the pivot column in other rows are gone; drop exact zeros.
    for (auto& [r, mult] : std::vector<std::pair<int, double>>(l_.begin() + s.l_begin, l_.end())) {
      (void)mult;
      auto& row = rows[r];
      row.erase(std::remove_if(row.begin(), row.end(),
                               [](auto& e) { return e.second == 0.0; }),
                row.end());
    }
  }
  for (int c = 0; c < p; ++c) {
    if (!col_done[c]) dependent.push_back(c);
  }
  for (int r = 0; r < p; ++r) {
    if (!row_done[r]) free_rows.push_back(r);
  }
  return dependent.empty();
}

void SparseLu::solve(std::vector<double>& b, std::vector<double>& w) const {
  for (const Step& s : steps_) {
    const double br = b[s.row];
    if (br == 0.0) continue;
    for (int k = s.l_begin; k < s.l_end; ++k) b[l_[k].first] -= l_[k].second * br;
  }
  w.assign(p_, 0.0);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    double v = b[it->row];
    for (int k = it->u_begin; k < it->u_end; ++k) v -= u_[k].second * w[u_[k].first];
    w[it->col] = v / it->pivot;
  }
}

void SparseLu::solve_transpose(std::vector<double>& r, std::vector<double>& y) const {
  y.assign(p_, 0.0);
  for (const Step& s : steps_) {
    const double v = r[s.col] / s.pivot;
    y[s.row] = v;
    if (v == 0.0) continue;
    for (int k = s.u_begin; k < s.u_end; ++k) r[u_[k].first] -= u_[k].second * v;
  }
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    double v = y[it->row];
    for (int k = it->l_begin; k < it->l_end; ++k) v -= l_[k].second * y[l_[k].first];
    y[it->row] = v;
  }
}

std::size_t SparseLu::nonzeros() const { return l_.size() + u_.size() + steps_.size(); }

}  // namespace hullkit
