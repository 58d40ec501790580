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

#include "hullkit/experiments.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "hullkit/branch_and_bound.h"
#include "hullkit/error.h"
#include "hullkit/first_order.h"
#include "hullkit/formulations.h"
#include "hullkit/simplex.h"

namespace hullkit {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

InstanceFile generate_gmrf_instance(int rows, int cols, double sigma, double k,
                                    std::uint64_t seed) {
  const Vector y = gmrf_observations(rows, cols, sigma, seed);
  std::ostringstream id;
  id << "gmrf-" << rows << "x" << cols << "-s" << format_double(sigma) << "-k"
     << format_double(k) << "-seed" << seed;
  return InstanceFile::from(gen_gmrf(rows, cols, sigma, k, y), id.str());
}

InstanceFile generate_best_subset_instance(int n, int m, double k, std::uint64_t seed) {
  if (n < 1 || m < 1 || !(k > 0) || !(k <= 1)) {
    throw Error(ErrorCode::kInvalidParameters, "need n, m >= 1 and 0 < k <= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix f(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) f(i, j) = g(rng);
  }
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::shuffle(order.begin(), order.end(), rng);
  const int s = static_cast<int>(std::ceil(k * n - 1e-9));
  Vector beta(n, 0.0);
  for (int j = 0; j < s; ++j) beta[order[j]] = (rng() & 1) ? 1.0 : -1.0;
  Vector y = f * beta;
  for (double& v : y) v += 0.5 * g(rng);
  std::ostringstream id;
  id << "subset-n" << n << "-m" << m << "-k" << format_double(k) << "-seed" << seed;
  return InstanceFile::from(gen_best_subset(f, y, k), id.str());
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kBrute: return "brute";
    case Method::kMilo: return "milo";
    case Method::kMiloLp: return "milo-lp";
    case Method::kPerspective: return "perspective";
    case Method::kNatural: return "natural";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kBrute, Method::kMilo, Method::kMiloLp, Method::kPerspective,
                   Method::kNatural}) {
    if (name == method_name(m)) return m;
  }
  throw Error(ErrorCode::kInvalidParameters, "unknown method '" + name + "'");
}

MethodResult run_method(const MiqoInstance& inst, Method method, double time_limit_seconds) {
  MethodResult out;
  out.method = method;
  const auto start = Clock::now();
  try {
    switch (method) {
      case Method::kBrute: {
        BruteForceResult r = brute_force_solve(inst);
        out.status = "optimal";
        out.value = r.value;
        out.nodes = static_cast<std::int64_t>(r.supports_visited);
        out.support = r.support.mask();
        break;
      }
      case Method::kMilo: {
        BnbResult r = branch_and_bound(build_milo(inst), time_limit_seconds);
        out.value = r.value;
        out.root_bound = r.root_bound;
        out.nodes = r.nodes;
        out.status = r.status == BnbStatus::kOptimal     ? "optimal"
                     : r.status == BnbStatus::kTimeLimit ? "time_limit"
                                                         : std::string("failed: ") +
                                                               bnb_status_name(r.status);
        if (!r.incumbent.empty()) {
          Vector z(r.incumbent.begin(), r.incumbent.begin() + inst.n());
          for (double& v : z) v = std::round(v);
          out.support = support_mask(z);
        }
        break;
      }
      case Method::kMiloLp: {
        LpSolution r = simplex_solve(relax(build_milo(inst)));
        if (r.status != LpStatus::kOptimal) {
          out.status = std::string("failed: ") + lp_status_name(r.status);
        } else {
          out.status = "bound";
          out.value = r.value;
          out.root_bound = r.value;
          out.nodes = 1;
        }
        break;
      }
      case Method::kPerspective: {
        RelaxationBound r = perspective_relaxation_bound(inst, perspective_delta(inst.q()));
        out.status = "bound";
        out.value = r.lower_bound;
        break;
      }
      case Method::kNatural: {
        RelaxationBound r = natural_relaxation_bound(inst, natural_bound_heuristic(inst));
        out.status = "bound";
        out.value = r.lower_bound;
        break;
      }
    }
  } catch (const Error& e) {
    out.status = "failed: " + std::string(error_code_name(e.code()));
  }
  out.seconds = elapsed(start);
  return out;
}

std::vector<ExperimentRow> run_gmrf_bench(const BenchGrid& grid) {
  if (grid.sigmas.empty() || grid.ks.empty() || grid.seeds.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "bench grids must be nonempty");
  }
  const Method methods[] = {Method::kMilo, Method::kMiloLp, Method::kPerspective,
                            Method::kNatural};
  std::vector<ExperimentRow> rows;
  for (double sigma : grid.sigmas) {
    for (double k : grid.ks) {
      std::ostringstream cell;
      cell << "gmrf-" << grid.rows << "x" << grid.cols << "-s" << format_double(sigma) << "-k"
           << format_double(k);
      struct Acc {
        double gap = 0, nodes = 0, time = 0;
        int ok = 0;
      } acc[4];
      for (std::uint64_t seed : grid.seeds) {
        const MiqoInstance inst =
            generate_gmrf_instance(grid.rows, grid.cols, sigma, k, seed).to_miqo();
        const MethodResult opt = run_method(inst, Method::kBrute, grid.time_limit);
        for (int m = 0; m < 4; ++m) {
          if (opt.status != "optimal") continue;
          MethodResult r = run_method(inst, methods[m], grid.time_limit);
          bool ok = r.status == "optimal" || r.status == "bound";
          if (methods[m] == Method::kMilo) {
            ok = ok && std::abs(r.value - opt.value) <= 1e-6 * (1 + std::abs(opt.value));
          }
          if (!ok) continue;
          double bound = methods[m] == Method::kMilo ? r.root_bound : r.value;
          acc[m].gap += gap_report(opt.value, bound, method_name(methods[m])).gap_percent;
          acc[m].nodes += static_cast<double>(r.nodes);
          acc[m].time += r.seconds;
          ++acc[m].ok;
        }
      }
      const int total = static_cast<int>(grid.seeds.size());
      for (int m = 0; m < 4; ++m) {
        ExperimentRow row;
        row.instance = cell.str();
        row.formulation = method_name(methods[m]);
        if (acc[m].ok > 0) {
          row.gap_percent = acc[m].gap / acc[m].ok;
          row.nodes = acc[m].nodes / acc[m].ok;
          row.wall_time_seconds = acc[m].time / acc[m].ok;
        }
        row.status = acc[m].ok == total
                         ? "ok"
                         : "partial " + std::to_string(acc[m].ok) + "/" + std::to_string(total);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "instance,formulation,gap_percent,nodes,status,wall_time_seconds\n";
  for (const ExperimentRow& r : rows) {
    out += sanitize(r.instance) + "," + sanitize(r.formulation) + "," +
           format_double(r.gap_percent) + "," + format_double(r.nodes) + "," +
           sanitize(r.status) + "," + format_double(r.wall_time_seconds) + "\n";
  }
  return out;
}

std::vector<ExperimentRow> rows_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "instance,formulation,gap_percent,nodes,status,wall_time_seconds") {
    throw Error(ErrorCode::kParseError, "unexpected CSV header");
  }
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f = split(line);
    if (f.size() != 6) throw Error(ErrorCode::kParseError, "CSV row needs 6 fields");
    rows.push_back({f[0], f[1], parse_double(f[2]), parse_double(f[3]), parse_double(f[5]), f[4]});
  }
  return rows;
}

std::string rows_to_markdown(const std::vector<ExperimentRow>& rows) {
  std::vector<std::vector<std::string>> cells{
      {"instance", "formulation", "% gap", "#node", "time (s)", "status"}};
  for (const ExperimentRow& r : rows) {
    char gap[32], nodes[32], time[32];
    std::snprintf(gap, sizeof(gap), "%.2f", r.gap_percent);
    std::snprintf(nodes, sizeof(nodes), "%.1f", r.nodes);
    std::snprintf(time, sizeof(time), "%.3f", r.wall_time_seconds);
    cells.push_back({r.instance, r.formulation, gap, nodes, time, r.status});
  }
  std::vector<size_t> width(6, 0);
  for (const auto& row : cells) {
    for (size_t c = 0; c < 6; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    out += "|";
    for (size_t c = 0; c < 6; ++c) {
      bool numeric = c >= 2 && c <= 4;
      std::string pad(width[c] - row[c].size(), ' ');
      out += " " + (numeric ? pad + row[c] : row[c] + pad) + " |";
    }
    out += "\n";
  };
  emit(cells[0]);
  out += "|";
  for (size_t c = 0; c < 6; ++c) {
    bool numeric = c >= 2 && c <= 4;
    out += " " + std::string(width[c] - (numeric ? 1 : 0), '-') + (numeric ? ":" : "") + " |";
  }
  out += "\n";
  for (size_t r = 1; r < cells.size(); ++r) emit(cells[r]);
  return out;
}

}  // namespace hullkit
