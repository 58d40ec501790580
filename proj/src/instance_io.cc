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

#include "hullkit/instance_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hullkit/error.h"
#include "json.hpp"

namespace hullkit {

namespace {

using Json = nlohmann::ordered_json;

ParseError bad(const std::string& what) { return ParseError(1, 1, what); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

Vector read_vector(const Json& j, const char* key) {
  if (!j.is_array()) throw bad(std::string(key) + " must be an array");
  Vector v;
  for (const Json& e : j) {
    if (!e.is_number()) throw bad(std::string(key) + " holds a non-number");
    double x = e.get<double>();
    if (!std::isfinite(x)) throw bad(std::string(key) + " holds a non-finite number");
    v.push_back(x);
  }
  return v;
}

Matrix read_matrix(const Json& j, const char* key, int cols) {
  if (!j.is_array()) throw bad(std::string(key) + " must be an array of rows");
  Matrix m(static_cast<int>(j.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    Vector row = read_vector(j[i], key);
    if (static_cast<int>(row.size()) != cols) throw bad(std::string(key) + " row length");
    for (int c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

Json support_json(const SupportFamily& z, int n) {
  Json out;
  switch (z.kind()) {
    case SupportFamily::Kind::kHypercube:
      out["kind"] = "hypercube";
      break;
    case SupportFamily::Kind::kCardinalityAtMost:
      out["kind"] = "cardinality";
      out["r"] = z.cardinality(n);
      break;
    case SupportFamily::Kind::kChooseOne:
      out["kind"] = "choose_one";
      break;
    case SupportFamily::Kind::kExplicitList:
      out["kind"] = "explicit";
      out["masks"] = z.masks();
      break;
  }
  return out;
}

SupportFamily read_support(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw bad("support needs a string kind");
  }
  const std::string kind = j["kind"];
  if (kind == "hypercube") return SupportFamily::hypercube();
  if (kind == "choose_one") return SupportFamily::choose_one();
  if (kind == "cardinality") {
    if (!j.contains("r") || !j["r"].is_number_integer()) throw bad("cardinality needs integer r");
    return SupportFamily::cardinality_at_most(j["r"].get<int>());
  }
  if (kind == "explicit") {
    if (!j.contains("masks") || !j["masks"].is_array()) throw bad("explicit needs masks");
    std::vector<std::uint64_t> masks;
    for (const Json& m : j["masks"]) {
      if (!m.is_number_unsigned()) throw bad("masks must be nonnegative integers");
      masks.push_back(m.get<std::uint64_t>());
    }
    return SupportFamily::explicit_list(std::move(masks));
  }
  throw bad("unknown support kind '" + kind + "'");
}

}  // namespace

MiqoInstance InstanceFile::to_miqo() const { return MiqoInstance(q, a, b, z, offset); }

FactorizedInstance InstanceFile::to_factorized() const {
  if (!factor) throw Error(ErrorCode::kInvalidParameters, "instance has no factor");
  return FactorizedInstance(*factor, a, b, z, offset);
}

InstanceFile InstanceFile::from(const MiqoInstance& inst, std::string id) {
  InstanceFile f;
  f.id = std::move(id);
  f.q = inst.q();
  f.a = inst.a();
  f.b = inst.b();
  f.z = inst.support_family();
  f.offset = inst.offset();
  return f;
}

InstanceFile InstanceFile::from(const FactorizedInstance& inst, std::string id) {
  InstanceFile f = from(inst.to_miqo(), std::move(id));
  f.factor = inst.f();
  return f;
}

std::string serialize_instance(const InstanceFile& f) {
  const int n = f.q.n();
  Json doc;
  doc["schema_version"] = kInstanceSchemaVersion;
  doc["id"] = f.id;
  doc["n"] = n;
  doc["q"] = matrix_json(f.q.dense());
  doc["a"] = vector_json(f.a);
  doc["b"] = vector_json(f.b);
  doc["offset"] = f.offset;
  doc["support"] = support_json(f.z, n);
  if (f.factor) doc["factor"] = matrix_json(*f.factor);
  return doc.dump(2) + "\n";
}

InstanceFile parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, "malformed JSON");
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  }
  if (!doc.is_object()) throw bad("instance document must be an object");
  if (!doc.contains("schema_version")) throw bad("missing schema_version");
  if (!doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != kInstanceSchemaVersion) {
    throw bad("unsupported schema_version");
  }
  for (const char* key : {"n", "q", "a", "b", "support"}) {
    if (!doc.contains(key)) throw bad(std::string("missing ") + key);
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1) throw bad("n must be positive");
  const int n = doc["n"].get<int>();
  InstanceFile f;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw bad("id must be a string");
    f.id = doc["id"].get<std::string>();
  }
  Matrix q = read_matrix(doc["q"], "q", n);
  if (q.rows() != n) throw bad("q must be n x n");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (q(i, j) != q(j, i)) throw bad("q is not symmetric");
    }
  }
  f.q = SymmetricMatrix(q);
  f.a = read_vector(doc["a"], "a");
  f.b = read_vector(doc["b"], "b");
  if (static_cast<int>(f.a.size()) != n || static_cast<int>(f.b.size()) != n) {
    throw bad("a and b must have length n");
  }
  if (doc.contains("offset")) {
    if (!doc["offset"].is_number()) throw bad("offset must be a number");
    f.offset = doc["offset"].get<double>();
    if (!std::isfinite(f.offset)) throw bad("offset must be finite");
  }
  f.z = read_support(doc["support"]);
  if (doc.contains("factor")) {
    const Json& fj = doc["factor"];
    if (!fj.is_array() || fj.size() != static_cast<std::size_t>(n) || !fj[0].is_array()) {
      throw bad("factor must have n rows");
    }
    f.factor = read_matrix(fj, "factor", static_cast<int>(fj[0].size()));
  }
  try {
    f.z.validate(n);
  } catch (const Error& e) {
    throw bad(e.what());
  }
  return f;
}

InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_instance(const InstanceFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << serialize_instance(f);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace hullkit
