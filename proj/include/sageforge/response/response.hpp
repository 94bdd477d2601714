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

#ifndef SAGEFORGE_RESPONSE_RESPONSE_HPP
#define SAGEFORGE_RESPONSE_RESPONSE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sageforge/model/ast.hpp"

namespace sageforge::response {

/// Half-open character range into StructuredResponse::raw, covering the
/// text between the markers (the markers themselves are excluded).
struct Span {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Span&) const = default;
  bool contains(size_t b, size_t e) const { return b >= begin && e <= end; }
};

/// A response against the reasoning template:
///
///   <think>
///     <strategy>...</strategy>
///     <modeling>...</modeling>
///     <check>...</check>
///   </think>
///   ```
///   model text
///   ```
///
/// Recognized component keys in `spans`: "think", "strategy", "modeling",
/// "check", "code". A component is recorded only when well formed: both
/// markers present, inner tags inside the think block and in template
/// order, the code fence closed. Anything else silently does not count.
struct StructuredResponse {
  std::string raw;
  std::map<std::string, Span> spans;
  std::string model_source;  // code block text, empty if absent
  std::optional<model::ModelTemplate> parsed;  // set iff model_source parses
};

enum class SegmentLabel { Strategy, Modeling, Check, Other };

const char* to_string(SegmentLabel label);

struct Token {
  std::string text;
  SegmentLabel label = SegmentLabel::Other;

  bool operator==(const Token&) const = default;
};

struct TokenizedResponse {
  std::vector<Token> tokens;
};

/// Lenient template scan; never throws. Malformed structure only reduces
/// the number of recorded components.
StructuredResponse parse_response(const std::string& text);

/// Number of well-formed components, in [0, 5].
int count_format_components(const StructuredResponse& r);

/// Whitespace tokenization of raw; a token gets a segment label when it
/// lies entirely inside that segment's span, and Other everywhere else
/// (think filler, code, markers, text outside the template).
TokenizedResponse label_tokens(const StructuredResponse& r);

}  // namespace sageforge::response

#endif  // SAGEFORGE_RESPONSE_RESPONSE_HPP
