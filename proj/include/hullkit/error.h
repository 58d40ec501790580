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

#ifndef HULLKIT_ERROR_H_
#define HULLKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hullkit {

enum class ErrorCode {
  kNotPositiveDefinite,
  kNoConvergence,
  kSingularSubmatrix,
  kDimensionMismatch,
  kTooManySupports,
  kUnsupportedSupportFamily,
  kIoError,
  kParseError,
  kInvalidParameters,
  kInfeasibleMultipliers,
  kDegenerateT,
  kDimensionTooLarge,
  kNumericalBreakdown,
  kInvalidDelta,
  kUnsupportedSign,
  kInfeasibleZ,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type; callers
// dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// kParseError carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorCode::kParseError, "line " + std::to_string(line) +
                                          ", column " + std::to_string(column) +
                                          ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hullkit

#endif  // HULLKIT_ERROR_H_
