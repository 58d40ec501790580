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

#include "cli.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hullkit/error.h"
#include "hullkit/experiments.h"
#include "hullkit/first_order.h"
#include "hullkit/formulations.h"
#include "hullkit/hulls.h"
#include "hullkit/instance_io.h"
#include "hullkit/lp_file.h"
#include "hullkit/polytope.h"
#include "json.hpp"

namespace hullkit::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_grid(const std::string& s) {
  int r = 0, c = 0;
  char x = 0, extra = 0;
  std::istringstream in(s);
  if (!(in >> r >> x >> c) || x != 'x' || (in >> extra) || r < 2 || c < 2) {
    throw UsageError("grid must look like 5x5 with both sides >= 2");
  }
  return {r, c};
}

std::string vec_text(const Vector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + ")";
}

std::string mat_text(const SymmetricMatrix& w) {
  std::string s = "[";
  for (int i = 0; i < w.n(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < w.n(); ++j) s += (j ? ", " : "") + format_double(w(i, j));
    s += "]";
  }
  return s + "]";
}

std::string support_text(std::uint64_t mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1) {
      s += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
  }
  return s + "}";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

// Lower bound on the affine dimension of P: its z-projection is conv(Z).
int z_affine_rank(const SupportFamily& z, int n) {
  if (z.kind() != SupportFamily::Kind::kExplicitList) {
    return z.cardinality(n) >= 1 ? n : 0;
  }
  const auto& masks = z.masks();
  if (masks.size() <= 1) return 0;
  Matrix d(static_cast<int>(masks.size()) - 1, n);
  for (size_t r = 1; r < masks.size(); ++r) {
    for (int i = 0; i < n; ++i) {
      d(static_cast<int>(r) - 1, i) =
          static_cast<double>(masks[r] >> i & 1) - static_cast<double>(masks[0] >> i & 1);
    }
  }
  return numerical_rank(d);
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string gmrf;
  bool best_subset = false;
  double sigma = -1;
  double k = -1;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.gmrf.empty() == !a.best_subset) throw UsageError("choose exactly one of --gmrf, --best-subset");
  if (a.k <= 0) throw UsageError("--k is required and must be positive");
  InstanceFile f;
  if (!a.gmrf.empty()) {
    if (a.sigma <= 0) throw UsageError("--sigma is required for --gmrf");
    auto [r, c] = parse_grid(a.gmrf);
    f = generate_gmrf_instance(r, c, a.sigma, a.k, a.seed);
  } else {
    if (a.n < 1 || a.m < 1) throw UsageError("--n and --m are required for --best-subset");
    f = generate_best_subset_instance(a.n, a.m, a.k, a.seed);
  }
  if (a.output.empty() || a.output == "-") {
    out << serialize_instance(f);
  } else {
    write_instance(f, a.output);
    out << "wrote " << f.id << " (n=" << f.q.n() << ") to " << a.output << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string path;
  std::string method = "milo";
  double time_limit = 60;
  bool check = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  Method method;
  try {
    method = parse_method(a.method);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const InstanceFile file = read_instance(a.path);
  const MiqoInstance inst = file.to_miqo();
  const MethodResult r = run_method(inst, method, a.time_limit);
  out << "instance: " << (file.id.empty() ? a.path : file.id) << "\n";
  out << "method: " << method_name(method) << "\n";
  out << "status: " << r.status << "\n";
  const bool exact = method == Method::kBrute || method == Method::kMilo;
  if (r.status.rfind("failed", 0) != 0) {
    out << (exact ? "value: " : "bound: ") << format_double(r.value) << "\n";
  }
  if (r.support) out << "support: " << support_text(*r.support, inst.n()) << "\n";
  out << "nodes: " << r.nodes << "\n";
  if (method == Method::kMilo || method == Method::kMiloLp) {
    out << "root_bound: " << format_double(r.root_bound) << "\n";
  }
  out << "seconds: " << r.seconds << "\n";
  if (a.check && r.status.rfind("failed", 0) != 0) {
    const MethodResult opt = run_method(inst, Method::kBrute, a.time_limit);
    if (opt.status == "optimal") {
      out << "opt: " << format_double(opt.value) << "\n";
      double bound = method == Method::kMilo ? r.root_bound : r.value;
      GapReport g = gap_report(opt.value, bound, std::string(method_name(method)));
      out << (g.absolute ? "absolute_gap: " : "root_gap_percent: ") << format_double(g.gap_percent)
          << "\n";
      const double tol = 1e-6 * (1 + std::abs(opt.value));
      bool consistent = exact ? std::abs(r.value - opt.value) <= tol : r.value <= opt.value + tol;
      if (method == Method::kNatural) {
        out << "consistent: n/a (natural bounds are heuristic)\n";
      } else {
        out << "consistent: " << (consistent ? "yes" : "no") << "\n";
      }
    }
  }
  if (r.status == "time_limit") return kExitTimeLimit;
  if (r.status.rfind("failed", 0) == 0) return kExitSolver;
  return kExitOk;
}

// ------------------------------------------------------------------ export

struct ExportArgs {
  std::string path;
  std::string formulation = "milo";
  std::string output;
};

int cmd_export(const ExportArgs& a, std::ostream& out) {
  if (a.formulation != "milo" && a.formulation != "milo-lp") {
    throw UsageError("--formulation must be milo or milo-lp");
  }
  const InstanceFile file = read_instance(a.path);
  LinearModel model = build_milo(file.to_miqo());
  if (a.formulation == "milo-lp") model = relax(model);
  write_lp_file(model, a.output);
  out << "wrote " << a.formulation << " (" << model.num_variables() << " variables, "
      << model.num_constraints() << " rows) to " << a.output << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string gmrf = "5x5";
  std::vector<double> sigmas;
  std::vector<double> ks;
  std::vector<std::uint64_t> seeds;
  double time_limit = 60;
  std::string csv;
  std::string markdown;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchGrid grid;
  std::tie(grid.rows, grid.cols) = parse_grid(a.gmrf);
  grid.sigmas = a.sigmas;
  grid.ks = a.ks;
  grid.seeds = a.seeds;
  grid.time_limit = a.time_limit;
  if (grid.sigmas.empty() || grid.ks.empty() || grid.seeds.empty()) {
    throw UsageError("--sigmas, --ks and --seeds need at least one value");
  }
  const std::vector<ExperimentRow> rows = run_gmrf_bench(grid);
  const std::string md = rows_to_markdown(rows);
  if (!a.csv.empty()) write_text(a.csv, rows_to_csv(rows));
  if (!a.markdown.empty()) write_text(a.markdown, md);
  out << md;
  return kExitOk;
}

// -------------------------------------------------------------------- hull

struct HullArgs {
  std::string path;
  std::string structure = "auto";
  bool facets = false;
};

nlohmann::ordered_json vertices_json(const VertexSet& vs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const PolytopeVertex& v : vs.vertices) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (int i = 0; i < v.w.n(); ++i) w.push_back(v.w.dense().row(i));
    arr.push_back({{"mask", v.mask}, {"z", v.z}, {"w", w}});
  }
  return arr;
}

nlohmann::ordered_json facets_json(const FacetSystem& fs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int r = 0; r < fs.rows(); ++r) {
    nlohmann::ordered_json g = nlohmann::ordered_json::array();
    for (int i = 0; i < fs.k; ++i) g.push_back(fs.gammas[r].dense().row(i));
    arr.push_back({{"gamma", g},
                   {"gvec", fs.gvecs[r]},
                   {"beta", fs.betas[r]},
                   {"relation", fs.equality[r] ? "=" : "<="}});
  }
  return arr;
}

void print_vertices(const VertexSet& vs, std::ostream& out) {
  out << "vertices (" << vs.vertices.size() << "):\n";
  for (const PolytopeVertex& v : vs.vertices) {
    out << "  S=" << support_text(v.mask, vs.n) << "  z=" << vec_text(v.z)
        << "  W=" << mat_text(v.w) << "\n";
  }
}

int cmd_hull(const HullArgs& a, std::ostream& out) {
  const InstanceFile file = read_instance(a.path);
  const int n = file.q.n();
  nlohmann::ordered_json machine;
  machine["instance"] = file.id;
  std::string structure = a.structure;
  if (structure == "auto") {
    if (n == 2 && file.q(0, 1) == -1.0) {
      structure = "two-by-two";
    } else if (file.z.kind() == SupportFamily::Kind::kChooseOne) {
      structure = "choose-one";
    } else if (file.factor && file.factor->cols() == 1) {
      structure = "rank-one";
    } else {
      structure = file.factor ? "factorized" : "canonical";
    }
  } else if (structure != "two-by-two" && structure != "choose-one" && structure != "rank-one") {
    throw UsageError("--structure must be auto, rank-one, choose-one or two-by-two");
  }
  machine["structure"] = structure;
  out << "structure: " << structure << "\n";

  if (structure == "two-by-two") {
    if (n != 2 || file.q(0, 1) != -1.0) {
      throw UsageError("two-by-two expects Q = [[d1, -1], [-1, d2]]");
    }
    const double d1 = file.q(0, 0), d2 = file.q(1, 1);
    const FacetSystem fs = hull_2x2_facets(d1, d2);
    out << "d1 = " << format_double(d1) << ", d2 = " << format_double(d2)
        << ", Delta = " << format_double(d1 * d2 - 1) << "\n";
    out << "facets (with 0 <= z <= 1):\n" << fs.describe();
    machine["facets"] = facets_json(fs);
  } else if (structure == "choose-one") {
    out << "hull: t >= sum_i Q_ii x_i^2 / z_i, sum_i z_i <= 1, z >= 0\n";
    Vector diag(n);
    for (int i = 0; i < n; ++i) diag[i] = file.q(i, i);
    out << "Q_ii = " << vec_text(diag) << "\n";
    machine["diagonal"] = diag;
  } else if (structure == "rank-one") {
    if (!file.factor || file.factor->cols() != 1) {
      throw UsageError("rank-one expects a stored factor with one column");
    }
    const Vector h = file.factor->col(0);
    out << "hull: t >= (h^T x)^2 / min(1, sum_i z_i), 0 <= z <= 1\n";
    out << "h = " << vec_text(h) << "\n";
    machine["h"] = h;
  }

  if (a.facets && z_affine_rank(file.z, n) > 10) {
    throw Error(ErrorCode::kDimensionTooLarge, "affine dimension of P exceeds 10");
  }
  VertexSet vs;
  if (file.factor) {
    vs = enumerate_vertices_factorized(file.to_factorized());
  } else {
    vs = enumerate_vertices(file.to_miqo());
  }
  print_vertices(vs, out);
  machine["vertices"] = vertices_json(vs);
  if (file.factor) {
    bool holds = check_technical_condition(file.to_factorized());
    out << "technical condition (col F equals the intersection of support preimages): "
        << (holds ? "holds" : "fails") << "\n";
    machine["technical_condition"] = holds;
  }
  if (a.facets) {
    const FacetSystem fs = facets_from_vertices(vs);
    out << "facet system (" << fs.inequality_rows() << " inequalities, "
        << fs.rows() - fs.inequality_rows() << " equalities):\n"
        << fs.describe();
    machine["facet_system"] = facets_json(fs);
  }
  out << "--- machine-readable ---\n" << machine.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex hulls and formulations for mixed-integer quadratic problems", "hullkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "Write a synthetic instance document");
  g->add_option("--gmrf", gen.gmrf, "Grid shape RxC for a GMRF denoising instance");
  g->add_flag("--best-subset", gen.best_subset, "Synthetic best-subset regression instance");
  g->add_option("--sigma", gen.sigma, "GMRF noise level");
  g->add_option("--k", gen.k, "Sparsity fraction; cardinality cap is ceil(k n)");
  g->add_option("--n", gen.n, "Features (best subset)");
  g->add_option("--m", gen.m, "Observations (best subset)");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("-o,--output", gen.output, "Output path; stdout when omitted");

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Solve or bound an instance");
  s->add_option("instance", solve.path, "Instance document")->required();
  s->add_option("--method", solve.method, "brute|milo|milo-lp|perspective|natural");
  s->add_option("--time-limit", solve.time_limit, "Seconds for branch-and-bound");
  s->add_flag("--check", solve.check, "Also run brute force and compare");

  ExportArgs exp;
  CLI::App* e = app.add_subcommand("export", "Write the MILO formulation as an LP file");
  e->add_option("instance", exp.path, "Instance document")->required();
  e->add_option("--formulation", exp.formulation, "milo|milo-lp");
  e->add_option("-o,--output", exp.output, "LP file path")->required();

  BenchArgs bench;
  CLI::App* b = app.add_subcommand("bench", "GMRF gap/node/time tables");
  b->add_option("--gmrf", bench.gmrf, "Grid shape RxC");
  b->add_option("--sigmas", bench.sigmas, "Noise levels")->delimiter(',')->required();
  b->add_option("--ks", bench.ks, "Sparsity fractions")->delimiter(',')->required();
  b->add_option("--seeds", bench.seeds, "Seeds averaged per cell")->delimiter(',')->required();
  b->add_option("--time-limit", bench.time_limit, "Seconds per B&B run");
  b->add_option("--csv", bench.csv, "CSV output path");
  b->add_option("--markdown", bench.markdown, "Markdown output path");

  HullArgs hull;
  CLI::App* h = app.add_subcommand("hull", "Print vertices, hull forms and facets");
  h->add_option("instance", hull.path, "Instance document")->required();
  h->add_option("--structure", hull.structure, "auto|rank-one|choose-one|two-by-two");
  h->add_flag("--facets", hull.facets, "Compute the facet system by double description");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (s->parsed()) return cmd_solve(solve, out);
    if (e->parsed()) return cmd_export(exp, out);
    if (b->parsed()) return cmd_bench(bench, out);
    if (h->parsed()) return cmd_hull(hull, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    switch (ex.code()) {
      case ErrorCode::kIoError:
      case ErrorCode::kParseError:
        return kExitIo;
      case ErrorCode::kDimensionTooLarge:
        return kExitDimension;
      case ErrorCode::kInvalidParameters:
        return kExitUsage;
      default:
        return kExitSolver;
    }
  }
  return kExitUsage;
}

}  // namespace hullkit::cli
