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

#ifndef SAGEFORGE_UTIL_NUMFMT_HPP
#define SAGEFORGE_UTIL_NUMFMT_HPP

#include <string>

namespace sageforge {

/// Shortest decimal with at most 12 significant digits that parses back to
/// exactly `v`; falls back to 12 digits if no shorter form round-trips.
std::string format_shortest(double v, int max_digits = 12);

/// Full-precision rendering (17 significant digits), used where two equal
/// doubles must always produce equal text.
std::string format_exact(double v);

}  // namespace sageforge

#endif  // SAGEFORGE_UTIL_NUMFMT_HPP
