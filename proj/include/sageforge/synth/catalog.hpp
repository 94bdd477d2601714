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

#ifndef SAGEFORGE_SYNTH_CATALOG_HPP
#define SAGEFORGE_SYNTH_CATALOG_HPP

#include <string>
#include <vector>

#include "sageforge/synth/synth.hpp"

namespace sageforge::synth {

/// One modeling strategy of a family: a data-independent model text plus
/// the reasoning fragments the reference generator renders around it.
struct StrategySpec {
  std::string name;         // short hyphenated label, e.g. "dense-pairs"
  std::string description;
  std::string model_template;
  std::string modeling_note;
  std::string check_note;
};

struct FamilySpec {
  std::string family;
  std::string question;
  reward::ProblemClass problem_class = reward::ProblemClass::LP;
  std::vector<StrategySpec> strategies;
  int reference_index = 0;  // the strategy whose solve defines ground truth
};

/// The seven built-in families, in catalog order.
const std::vector<FamilySpec>& family_specs();

const FamilySpec* find_family(const std::string& name);

/// Base data for one family (the "<family>_base" instance).
model::DataBinding base_data(const std::string& family);

/// Builds the seven base instances. Each ground truth is the built-in
/// solver's optimum of the family's reference formulation; throws if any
/// reference solve is not Optimal.
std::vector<ProblemInstance> builtin_catalog();

}  // namespace sageforge::synth

#endif  // SAGEFORGE_SYNTH_CATALOG_HPP
