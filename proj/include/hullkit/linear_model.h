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

// Sparse linear and mixed-integer linear models in minimization form.

#ifndef HULLKIT_LINEAR_MODEL_H_
#define HULLKIT_LINEAR_MODEL_H_

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hullkit/linalg.h"

namespace hullkit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Term {
  int var;
  double coef;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Names must be unique within variables and within constraints, start with a
// letter or '_', and use only [A-Za-z0-9_.]; "free", "inf" and "infinity"
// are reserved. Violations throw kInvalidParameters.
class LinearModel {
 public:
  // Throws kInvalidParameters on NaN bounds or lower > upper.
  int add_variable(std::string name, double lower, double upper,
                   bool integer = false);
  // Repeated variables in `terms` are merged in first-occurrence order.
  int add_constraint(std::string name, std::vector<Term> terms,
                     Relation relation, double rhs);

  void set_objective(int var, double coef);
  void set_objective_constant(double c) { objective_constant_ = c; }
  void set_bounds(int var, double lower, double upper);
  void set_integer(int var, bool integer);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const Variable& variable(int j) const { return variables_.at(j); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Constraint& constraint(int i) const { return constraints_.at(i); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Vector& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }
  std::optional<int> find_variable(std::string_view name) const;
  bool has_integers() const;

  double objective_value(const Vector& x) const;
  double row_activity(int i, const Vector& x) const;
  // Largest bound or row violation of x (integrality ignored).
  double max_violation(const Vector& x) const;

  friend bool operator==(const LinearModel& a, const LinearModel& b) {
    return a.variables_ == b.variables_ && a.constraints_ == b.constraints_ &&
           a.objective_ == b.objective_ &&
           a.objective_constant_ == b.objective_constant_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Vector objective_;
  double objective_constant_ = 0.0;
  std::unordered_map<std::string, int> variable_index_;
  std::unordered_map<std::string, int> constraint_index_;
};

bool is_valid_name(std::string_view name);

}  // namespace hullkit

#endif  // HULLKIT_LINEAR_MODEL_H_
