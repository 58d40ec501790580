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

// Instance documents: JSON with a mandatory schema_version, row-major
// matrices and a support-family descriptor.

#ifndef HULLKIT_INSTANCE_IO_H_
#define HULLKIT_INSTANCE_IO_H_

#include <optional>
#include <string>

#include "hullkit/linalg.h"
#include "hullkit/model.h"

namespace hullkit {

inline constexpr int kInstanceSchemaVersion = 1;

struct InstanceFile {
  std::string id;
  SymmetricMatrix q;
  Vector a;
  Vector b;
  SupportFamily z = SupportFamily::hypercube();
  double offset = 0.0;
  std::optional<Matrix> factor;  // F with Q = F F^T

  MiqoInstance to_miqo() const;
  // Throws kInvalidParameters when no factor is stored.
  FactorizedInstance to_factorized() const;
  static InstanceFile from(const MiqoInstance& inst, std::string id = "");
  static InstanceFile from(const FactorizedInstance& inst, std::string id = "");
};

// Canonical text: two-space indented JSON with keys in a fixed order.
std::string serialize_instance(const InstanceFile& f);
// Throws kParseError on malformed text, a missing or unknown schema_version,
// non-finite numbers or inconsistent sizes.
InstanceFile parse_instance(const std::string& text);

// Throw kIoError when the file cannot be read or written.
InstanceFile read_instance(const std::string& path);
void write_instance(const InstanceFile& f, const std::string& path);

}  // namespace hullkit

#endif  // HULLKIT_INSTANCE_IO_H_
