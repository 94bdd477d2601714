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

#ifndef SAGEFORGE_UTIL_HASH_HPP
#define SAGEFORGE_UTIL_HASH_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace sageforge {

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

/// 64-bit FNV-1a over the bytes of `data`.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= kFnvPrime;
  }
  return h;
}

/// Fixed-width lowercase hex rendering, e.g. for digests.
std::string to_hex64(std::uint64_t value);

}  // namespace sageforge

#endif  // SAGEFORGE_UTIL_HASH_HPP
