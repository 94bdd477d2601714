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

#ifndef SAGEFORGE_MODEL_LPFILE_HPP
#define SAGEFORGE_MODEL_LPFILE_HPP

#include <string>

#include "sageforge/model/flat.hpp"

namespace sageforge::model {

struct LpFormatError : std::runtime_error {
  LpFormatError(std::string msg, int l)
      : std::runtime_error(std::move(msg)), line(l) {}
  int line;
};

/// Serializes a flat model in LP format. Every variable gets a Bounds line
/// in storage order, which is what makes import_lp(export_lp(m)) == m hold
/// field for field. Numbers use the shortest round-tripping decimal with at
/// most 12 significant digits.
std::string export_lp(const FlatModel& m);

/// Parses LP text. Inverse of export_lp on its own output; external files
/// are accepted when they stay inside the same dialect (variables missing
/// from Bounds default to [0, +inf)). Throws LpFormatError.
FlatModel import_lp(const std::string& text);

}  // namespace sageforge::model

#endif  // SAGEFORGE_MODEL_LPFILE_HPP
