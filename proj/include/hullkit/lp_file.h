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

// CPLEX LP text format, restricted to what LinearModel can express:
// minimization objective (with optional constant), <=, = and >= rows, bounds,
// Binaries and Generals sections. Numbers are written with 17 significant
// digits so write(read(write(m))) is byte-identical to write(m).

#ifndef HULLKIT_LP_FILE_H_
#define HULLKIT_LP_FILE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "hullkit/linear_model.h"

namespace hullkit {

std::string format_lp(const LinearModel& model);

// Throws ParseError with the offending line and column.
LinearModel parse_lp(std::string_view text);

// Throws kIoError when the destination cannot be written.
void write_lp_file(const LinearModel& model, const std::filesystem::path& path);
LinearModel read_lp_file(const std::filesystem::path& path);

}  // namespace hullkit

#endif  // HULLKIT_LP_FILE_H_
