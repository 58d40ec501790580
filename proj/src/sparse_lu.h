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

// Sparse LU factorization with Markowitz pivot selection, used for simplex
// basis kernels. Internal header.

#ifndef HULLKIT_SRC_SPARSE_LU_H_
#define HULLKIT_SRC_SPARSE_LU_H_

#include <utility>
#include <vector>

namespace hullkit {

class SparseLu {
 public:
  using Column = std::vector<std::pair<int, double>>;  // (row, value)

  // Factors the p x p matrix given by columns. Columns that receive no pivot
  // of magnitude above `tiny` are listed in `dependent`, and the rows left
  // without a pivot in `free_rows` (same length). Returns true when both are
  // empty.
  bool factor(int p, const std::vector<Column>& columns, double tiny,
              std::vector<int>& dependent, std::vector<int>& free_rows);

  // K w = b: b indexed by row on input, w indexed by column on output.
  void solve(std::vector<double>& b, std::vector<double>& w) const;
  // K^T y = r: r indexed by column (destroyed), y indexed by row.
  void solve_transpose(std::vector<double>& r, std::vector<double>& y) const;

  int size() const { return p_; }
  std::size_t nonzeros() const;

 private:
  struct Step {
    int row;
    int col;
    double pivot;
    int l_begin, l_end;  // eliminated rows: (row, multiplier)
    int u_begin, u_end;  // remaining entries of the pivot row: (col, value)
  };
  int p_ = 0;
  std::vector<Step> steps_;
  std::vector<std::pair<int, double>> l_;
  std::vector<std::pair<int, double>> u_;
};

}  // namespace hullkit

#endif  // HULLKIT_SRC_SPARSE_LU_H_
