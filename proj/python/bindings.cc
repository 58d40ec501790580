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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hullkit/error.h"
#include "hullkit/experiments.h"
#include "hullkit/hulls.h"
#include "hullkit/instance_io.h"
#include "hullkit/model.h"
#include "hullkit/polytope.h"

namespace py = pybind11;
using namespace hullkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected a 2-d array");
  const int r = static_cast<int>(a.shape(0)), c = static_cast<int>(a.shape(1));
  return Matrix::from_rows(r, c, std::span<const double>(a.data(), a.size()));
}

Vector to_vector(const Array& a) {
  if (a.ndim() != 1) throw Error(ErrorCode::kDimensionMismatch, "expected a 1-d array");
  return Vector(a.data(), a.data() + a.size());
}

Array from_matrix(const Matrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Array from_vector(const Vector& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

SupportFamily make_support(const std::string& kind, int r, const std::vector<std::uint64_t>& masks) {
  if (kind == "hypercube") return SupportFamily::hypercube();
  if (kind == "cardinality") return SupportFamily::cardinality_at_most(r);
  if (kind == "choose_one") return SupportFamily::choose_one();
  if (kind == "explicit") return SupportFamily::explicit_list(masks);
  throw Error(ErrorCode::kUnsupportedSupportFamily, "unknown support kind " + kind);
}

std::string support_kind(const SupportFamily& z) {
  switch (z.kind()) {
    case SupportFamily::Kind::kHypercube: return "hypercube";
    case SupportFamily::Kind::kCardinalityAtMost: return "cardinality";
    case SupportFamily::Kind::kChooseOne: return "choose_one";
    case SupportFamily::Kind::kExplicitList: return "explicit";
  }
  return "";
}

std::vector<int> mask_indices(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1) out.push_back(i);
  }
  return out;
}

py::list vertex_list(const VertexSet& vs) {
  py::list out;
  for (const PolytopeVertex& v : vs.vertices) {
    py::dict d;
    d["mask"] = v.mask;
    d["z"] = from_vector(v.z);
    d["w"] = from_matrix(v.w.dense());
    out.append(d);
  }
  return out;
}

VertexSet instance_vertices(const InstanceFile& f) {
  return f.factor ? enumerate_vertices_factorized(f.to_factorized())
                  : enumerate_vertices(f.to_miqo());
}

}  // namespace

PYBIND11_MODULE(_hullkit, m) {
  m.doc() = "Convex hulls and formulations for mixed-integer quadratic problems";

  static py::exception<Error> exc(m, "HullkitError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.what(), std::string(error_code_name(e.code()))).ptr());
    }
  });

  py::class_<InstanceFile>(m, "Instance")
      .def(py::init([](const Array& q, const Array& a, const Array& b, const std::string& support,
                       int r, std::vector<std::uint64_t> masks, double offset,
                       std::optional<Array> factor, std::string id) {
             InstanceFile f;
             f.id = std::move(id);
             f.q = SymmetricMatrix(to_matrix(q));
             f.a = to_vector(a);
             f.b = to_vector(b);
             f.z = make_support(support, r, masks);
             f.offset = offset;
             if (factor) f.factor = to_matrix(*factor);
             f.to_miqo();  // validates sizes and convexity
             return f;
           }),
           py::arg("q"), py::arg("a"), py::arg("b"), py::arg("support") = "hypercube",
           py::arg("r") = 0, py::arg("masks") = std::vector<std::uint64_t>{},
           py::arg("offset") = 0.0, py::arg("factor") = py::none(), py::arg("id") = "")
      .def_static("from_json", &parse_instance, py::arg("text"))
      .def_static("read", &read_instance, py::arg("path"))
      .def("to_json", &serialize_instance)
      .def("write", [](const InstanceFile& f, const std::string& path) { write_instance(f, path); })
      .def_readonly("id", &InstanceFile::id)
      .def_property_readonly("n", [](const InstanceFile& f) { return f.q.n(); })
      .def_property_readonly("q", [](const InstanceFile& f) { return from_matrix(f.q.dense()); })
      .def_property_readonly("a", [](const InstanceFile& f) { return from_vector(f.a); })
      .def_property_readonly("b", [](const InstanceFile& f) { return from_vector(f.b); })
      .def_readonly("offset", &InstanceFile::offset)
      .def_property_readonly("support_kind", [](const InstanceFile& f) { return support_kind(f.z); })
      .def_property_readonly("cardinality", [](const InstanceFile& f) { return f.z.cardinality(f.q.n()); })
      .def_property_readonly("factor", [](const InstanceFile& f) -> py::object {
        if (!f.factor) return py::none();
        return from_matrix(*f.factor);
      })
      .def("__repr__", [](const InstanceFile& f) {
        return "<Instance " + (f.id.empty() ? std::string("?") : f.id) + " n=" +
               std::to_string(f.q.n()) + ">";
      });

  m.def("generate_gmrf", &generate_gmrf_instance, py::arg("rows"), py::arg("cols"),
        py::arg("sigma"), py::arg("k"), py::arg("seed") = 1);
  m.def("generate_best_subset", &generate_best_subset_instance, py::arg("n"), py::arg("m"),
        py::arg("k"), py::arg("seed") = 1);

  m.def(
      "solve",
      [](const InstanceFile& f, const std::string& method, double time_limit) {
        const MiqoInstance inst = f.to_miqo();
        MethodResult r = run_method(inst, parse_method(method), time_limit);
        py::dict d;
        d["method"] = method_name(r.method);
        d["status"] = r.status;
        d["value"] = r.value;
        d["root_bound"] = r.root_bound;
        d["nodes"] = r.nodes;
        d["seconds"] = r.seconds;
        d["support"] = r.support ? py::cast(mask_indices(*r.support, inst.n())) : py::none();
        return d;
      },
      py::arg("instance"), py::arg("method") = "milo", py::arg("time_limit") = 60.0);

  m.def(
      "vertices",
      [](const InstanceFile& f) { return vertex_list(instance_vertices(f)); },
      py::arg("instance"));
  m.def(
      "technical_condition",
      [](const InstanceFile& f) { return check_technical_condition(f.to_factorized()); },
      py::arg("instance"));

  py::class_<FacetSystem>(m, "FacetSystem")
      .def_readonly("n", &FacetSystem::n)
      .def_readonly("k", &FacetSystem::k)
      .def_property_readonly("rows", &FacetSystem::rows)
      .def_property_readonly("inequality_rows", &FacetSystem::inequality_rows)
      .def_property_readonly("gammas",
                             [](const FacetSystem& fs) {
                               std::vector<Array> out;
                               for (const auto& g : fs.gammas) out.push_back(from_matrix(g.dense()));
                               return out;
                             })
      .def_property_readonly("gvecs",
                             [](const FacetSystem& fs) {
                               std::vector<Array> out;
                               for (const auto& g : fs.gvecs) out.push_back(from_vector(g));
                               return out;
                             })
      .def_property_readonly("betas", [](const FacetSystem& fs) { return from_vector(fs.betas); })
      .def_property_readonly("equality",
                             [](const FacetSystem& fs) {
                               return std::vector<bool>(fs.equality.begin(), fs.equality.end());
                             })
      .def("max_violation",
           [](const FacetSystem& fs, const Array& z, const Array& w) {
             return fs.max_violation(to_vector(z), SymmetricMatrix(to_matrix(w)));
           })
      .def("describe", &FacetSystem::describe)
      .def("__repr__", [](const FacetSystem& fs) {
        return "<FacetSystem " + std::to_string(fs.inequality_rows()) + " inequalities, " +
               std::to_string(fs.rows() - fs.inequality_rows()) + " equalities>";
      });

  m.def("hull_2x2_facets", &hull_2x2_facets, py::arg("d1"), py::arg("d2"));
  m.def(
      "facets",
      [](const InstanceFile& f) { return facets_from_vertices(instance_vertices(f)); },
      py::arg("instance"));
  m.def(
      "separate",
      [](const FacetSystem& fs, const Array& x, const Array& z, double t) -> py::object {
        SolutionPoint p{to_vector(x), to_vector(z), t};
        auto y = separate_cut(fs, p);
        if (!y) return py::none();
        const double value = eval_projection_cut(fs, *y, p);
        return py::make_tuple(from_vector(y->y), value);
      },
      py::arg("facets"), py::arg("x"), py::arg("z"), py::arg("t"),
      "Most violated projection cut at (x, z, t) as (y, slack), or None.\n"
      "The slack t*den - x^T (sum y Gamma) x is negative when the point is cut.");

  m.def(
      "rank_one_lowerbound",
      [](const Array& h, const Array& x, const Array& z, double t) {
        return hull_rank_one_lowerbound(to_vector(h), {to_vector(x), to_vector(z), t});
      },
      py::arg("h"), py::arg("x"), py::arg("z"), py::arg("t") = 0.0);
  m.def(
      "choose_one_lowerbound",
      [](const Array& q, const Array& x, const Array& z, double t) {
        return hull_choose_one_lowerbound(SymmetricMatrix(to_matrix(q)),
                                          {to_vector(x), to_vector(z), t});
      },
      py::arg("q"), py::arg("x"), py::arg("z"), py::arg("t") = 0.0);
}
