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

#ifndef SAGEFORGE_MODEL_DATA_HPP
#define SAGEFORGE_MODEL_DATA_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sageforge::model {

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

using Tuple = std::vector<std::string>;

/// An ordered, duplicate-free list of member tuples of uniform arity.
struct SetBinding {
  std::string name;
  int arity = 1;
  std::vector<Tuple> members;

  bool contains(const Tuple& t) const;
};

/// Concrete data for a model template: sets, indexed parameter tables, and
/// scalar parameters.
struct DataBinding {
  std::map<std::string, SetBinding> sets;
  std::map<std::string, std::map<Tuple, double>> params;
  std::map<std::string, double> scalars;
};

/// Checks structural invariants (distinct members, uniform arity, finite
/// values). Throws DataError.
void validate_data(const DataBinding& data);

/// JSON wire format:
///   {"sets": {"S": ["A", ...] or [["A","B"], ...]},
///    "params": {"P": {"A,B": 3.0, ...}},
///    "scalars": {"k": 1.5}}
DataBinding data_from_json(const std::string& json_text);
std::string data_to_json(const DataBinding& data);

std::string tuple_key(const Tuple& t);

}  // namespace sageforge::model

#endif  // SAGEFORGE_MODEL_DATA_HPP
