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

// Subcommands of the hullkit tool. Exit codes: 0 success, 1 I/O or input
// file errors, 2 usage errors, 3 solver failure, 4 time limit, 5 facet
// dimension guard.

#ifndef HULLKIT_TOOLS_CLI_H_
#define HULLKIT_TOOLS_CLI_H_

#include <ostream>

namespace hullkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitTimeLimit = 4;
inline constexpr int kExitDimension = 5;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hullkit::cli

#endif  // HULLKIT_TOOLS_CLI_H_
