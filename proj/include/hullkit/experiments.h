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

// Instance families, per-method runs and the bench tables.

#ifndef HULLKIT_EXPERIMENTS_H_
#define HULLKIT_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hullkit/instance_io.h"
#include "hullkit/model.h"

namespace hullkit {

// rows x cols GMRF denoising instance over gmrf_observations(seed).
InstanceFile generate_gmrf_instance(int rows, int cols, double sigma, double k,
                                    std::uint64_t seed);
// Regression with an m x n standard normal design, a +-1 signal on
// ceil(k n) random features and N(0, 0.25) noise.
InstanceFile generate_best_subset_instance(int n, int m, double k, std::uint64_t seed);

enum class Method { kBrute, kMilo, kMiloLp, kPerspective, kNatural };

const char* method_name(Method m);
// Throws kInvalidParameters for unknown names.
Method parse_method(const std::string& name);

struct MethodResult {
  Method method = Method::kBrute;
  std::string status;        // "optimal", "bound", "time_limit", "failed: ..."
  double value = 0.0;        // optimum for exact methods, lower bound otherwise
  double root_bound = 0.0;   // LP root for milo
  std::int64_t nodes = 0;
  double seconds = 0.0;
  std::optional<std::uint64_t> support;
};

// Solver failures are reported in `status` rather than thrown.
MethodResult run_method(const MiqoInstance& inst, Method method, double time_limit_seconds);

struct ExperimentRow {
  std::string instance;
  std::string formulation;
  double gap_percent = 0.0;
  double nodes = 0.0;
  double wall_time_seconds = 0.0;
  std::string status;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct BenchGrid {
  int rows = 5;
  int cols = 5;
  std::vector<double> sigmas;
  std::vector<double> ks;
  std::vector<std::uint64_t> seeds;
  double time_limit = 60.0;
};

// One averaged row per (sigma, k, formulation) in grid order. Formulations:
// milo (root gap, B&B nodes and time), milo-lp, perspective, natural.
std::vector<ExperimentRow> run_gmrf_bench(const BenchGrid& grid);

// CSV with header instance,formulation,gap_percent,nodes,status,wall_time_seconds.
// Timing is the last column so deterministic comparisons can drop it.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> rows_from_csv(const std::string& csv);
std::string rows_to_markdown(const std::vector<ExperimentRow>& rows);

// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace hullkit

#endif  // HULLKIT_EXPERIMENTS_H_
