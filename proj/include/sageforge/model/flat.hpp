// Copyright 2026 The sage-forge Authors
//
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

#ifndef SAGEFORGE_MODEL_FLAT_HPP
#define SAGEFORGE_MODEL_FLAT_HPP

#include <string>
#include <utility>
#include <vector>

#include "sageforge/model/ast.hpp"
#include "sageforge/model/data.hpp"

namespace sageforge::model {

struct GroundError : std::runtime_error {
  enum class Kind {
    MissingSet,
    MissingParamEntry,
    MissingVarInstance,
    EmptyModel,
    InvalidBounds,
    InfeasibleConstant,
  };

  GroundError(Kind k, std::string msg, std::string subj = {})
      : std::runtime_error(std::move(msg)), kind(k), subject(std::move(subj)) {}

  Kind kind;
  std::string subject;  // e.g. "Cost[A,A]" for a missing parameter entry
};

const char* to_string(GroundError::Kind k);

struct FlatVar {
  std::string name;  // "family(m1,m2)" or a bare scalar name
  VarDomain domain = VarDomain::Continuous;
  double lower;  // -inf allowed
  double upper;  // +inf allowed

  bool operator==(const FlatVar&) const = default;
};

/// Sparse row: (var index, coefficient) sorted by var index, zeros dropped.
using CoefList = std::vector<std::pair<int, double>>;

struct FlatConstraint {
  std::string name;
  CoefList coefs;
  RelSense sense = RelSense::Le;
  double rhs = 0.0;

  bool operator==(const FlatConstraint&) const = default;
};

struct FlatModel {
  std::vector<FlatVar> vars;
  bool minimize = true;
  CoefList objective;
  double objective_constant = 0.0;
  std::vector<FlatConstraint> constraints;

  bool operator==(const FlatModel&) const = default;
  int var_index(const std::string& name) const;  // -1 if absent
};

/// Instantiates a template against data. Variable and constraint families
/// are emitted in lexicographic family-name order, instances within a
/// family in set-member order. Throws GroundError.
FlatModel ground(const ModelTemplate& tpl, const DataBinding& data);

struct StructStats {
  int num_vars = 0;
  int num_constraints = 0;
  int nnz = 0;  // constraint matrix only; bounds excluded

  bool operator==(const StructStats&) const = default;
};

StructStats struct_stats(const FlatModel& m);

}  // namespace sageforge::model

#endif  // SAGEFORGE_MODEL_FLAT_HPP
