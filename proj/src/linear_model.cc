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

#include "hullkit/linear_model.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "hullkit/error.h"

namespace hullkit {

namespace {

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void check_bounds(const std::string& name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    throw Error(ErrorCode::kInvalidParameters, "bad bounds for " + name);
  }
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  const unsigned char first = name.front();
  if (!std::isalpha(first) && first != '_') return false;
  for (unsigned char c : name) {
    if (!std::isalnum(c) && c != '_' && c != '.') return false;
  }
  const std::string l = lower_case(name);
  return l != "free" && l != "inf" && l != "infinity";
}

int LinearModel::add_variable(std::string name, double lower, double upper,
                              bool integer) {
  if (!is_valid_name(name)) {
    throw Error(ErrorCode::kInvalidParameters, "invalid variable name '" + name + "'");
  }
  if (variable_index_.count(name)) {
    throw Error(ErrorCode::kInvalidParameters, "duplicate variable " + name);
  }
  check_bounds(name, lower, upper);
  const int j = num_variables();
  variable_index_.emplace(name, j);
  variables_.push_back({std::move(name), lower, upper, integer});
  objective_.push_back(0.0);
  return j;
}

int LinearModel::add_constraint(std::string name, std::vector<Term> terms,
                                Relation relation, double rhs) {
  if (!is_valid_name(name)) {
    throw Error(ErrorCode::kInvalidParameters, "invalid constraint name '" + name + "'");
  }
  if (constraint_index_.count(name)) {
    throw Error(ErrorCode::kInvalidParameters, "duplicate constraint " + name);
  }
  if (!std::isfinite(rhs)) {
    throw Error(ErrorCode::kInvalidParameters, "non-finite rhs in " + name);
  }
  std::vector<Term> merged;
  std::unordered_map<int, std::size_t> slot;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidParameters,
                  "constraint " + name + " references an undeclared variable");
    }
    if (!std::isfinite(t.coef)) {
      throw Error(ErrorCode::kInvalidParameters, "non-finite coefficient in " + name);
    }
    auto [it, inserted] = slot.emplace(t.var, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  const int i = num_constraints();
  constraint_index_.emplace(name, i);
  constraints_.push_back({std::move(name), std::move(merged), relation, rhs});
  return i;
}

void LinearModel::set_objective(int var, double coef) {
  if (!std::isfinite(coef)) {
    throw Error(ErrorCode::kInvalidParameters, "non-finite objective coefficient");
  }
  objective_.at(var) = coef;
}

void LinearModel::set_bounds(int var, double lower, double upper) {
  Variable& v = variables_.at(var);
  check_bounds(v.name, lower, upper);
  v.lower = lower;
  v.upper = upper;
}

void LinearModel::set_integer(int var, bool integer) {
  variables_.at(var).integer = integer;
}

std::optional<int> LinearModel::find_variable(std::string_view name) const {
  auto it = variable_index_.find(std::string(name));
  if (it == variable_index_.end()) return std::nullopt;
  return it->second;
}

bool LinearModel::has_integers() const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [](const Variable& v) { return v.integer; });
}

double LinearModel::objective_value(const Vector& x) const {
  double s = objective_constant_;
  for (int j = 0; j < num_variables(); ++j) s += objective_[j] * x.at(j);
  return s;
}

double LinearModel::row_activity(int i, const Vector& x) const {
  double s = 0.0;
  for (const Term& t : constraints_.at(i).terms) s += t.coef * x.at(t.var);
  return s;
}

double LinearModel::max_violation(const Vector& x) const {
  if (static_cast<int>(x.size()) != num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch, "point has wrong length");
  }
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, variables_[j].lower - x[j], x[j] - variables_[j].upper});
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const double r = row_activity(i, x) - constraints_[i].rhs;
    switch (constraints_[i].relation) {
      case Relation::kLessEqual: worst = std::max(worst, r); break;
      case Relation::kGreaterEqual: worst = std::max(worst, -r); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(r)); break;
    }
  }
  return worst;
}

}  // namespace hullkit
