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

#ifndef SAGEFORGE_MODEL_CANONICAL_HPP
#define SAGEFORGE_MODEL_CANONICAL_HPP

#include <string>

#include "sageforge/model/flat.hpp"

namespace sageforge::model {

struct CanonicalForm {
  std::string refined_signature;  // normalized text, independent of names
  std::string digest;  // 64-bit FNV-1a of the signature, lowercase hex

  bool operator==(const CanonicalForm&) const = default;
};

/// Two-pass signature refinement. Pass one fingerprints each variable by
/// (domain, bounds, objective coefficient, incident sense/coefficient
/// multiset) and each constraint by (sense, rhs, multiset of variable
/// fingerprints with coefficients); pass two refines both once more through
/// the other side's pass-one classes. The normalized text is rendered from
/// the resulting equivalence classes with multiplicities, so any renaming
/// or reordering of an identical structure produces identical text.
/// Structures a two-pass refinement cannot separate collapse together.
CanonicalForm canonicalize(const FlatModel& m);

/// Digest equality.
bool equivalent(const FlatModel& a, const FlatModel& b);

}  // namespace sageforge::model

#endif  // SAGEFORGE_MODEL_CANONICAL_HPP
