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

#include "sageforge/response/response.hpp"

#include <cctype>

namespace sageforge::response {

namespace {

constexpr size_t kNpos = std::string::npos;

/// Finds `<tag>content</tag>` with the opening marker at or after `from`
/// and the whole construct before `until`. Returns the content span, or
/// nullopt when either marker is missing in order.
std::optional<Span> find_tag(const std::string& text, const std::string& tag,
                             size_t from, size_t until) {
  std::string open = "<" + tag + ">";
  std::string close = "</" + tag + ">";
  size_t o = text.find(open, from);
  if (o == kNpos || o + open.size() > until) return std::nullopt;
  size_t c = text.find(close, o + open.size());
  if (c == kNpos || c + close.size() > until) return std::nullopt;
  return Span{o + open.size(), c};
}

/// First closed ``` fence at or after `from`. The opening marker's line
/// remainder (a language hint) is skipped; content runs to the closing
/// marker.
std::optional<Span> find_fence(const std::string& text, size_t from) {
  size_t o = text.find("```", from);
  if (o == kNpos) return std::nullopt;
  size_t content = o + 3;
  size_t nl = text.find('\n', content);
  if (nl != kNpos) {
    // Only treat the remainder of the line as a language hint if the
    // closing marker is not on the same line.
    size_t c_same = text.find("```", content);
    if (c_same != kNpos && c_same < nl) return Span{content, c_same};
    content = nl + 1;
  }
  size_t c = text.find("```", content);
  if (c == kNpos) return std::nullopt;
  return Span{content, c};
}

}  // namespace

const char* to_string(SegmentLabel label) {
  switch (label) {
    case SegmentLabel::Strategy: return "strategy";
    case SegmentLabel::Modeling: return "modeling";
    case SegmentLabel::Check: return "check";
    case SegmentLabel::Other: return "other";
  }
  return "?";
}

StructuredResponse parse_response(const std::string& text) {
  StructuredResponse r;
  r.raw = text;

  auto think = find_tag(text, "think", 0, text.size());
  size_t code_from = 0;
  if (think) {
    r.spans["think"] = *think;
    code_from = think->end;  // first fence after the closing marker
    // Inner segments live inside the think block, each opening after the
    // previous one closed; out-of-order occurrences do not count.
    size_t cursor = think->begin;
    for (const char* tag : {"strategy", "modeling", "check"}) {
      auto span = find_tag(text, tag, cursor, think->end);
      if (!span) continue;
      r.spans[tag] = *span;
      cursor = span->end;
    }
  }

  if (auto code = find_fence(text, code_from)) {
    r.spans["code"] = *code;
    r.model_source = text.substr(code->begin, code->end - code->begin);
    try {
      r.parsed = model::parse_model(r.model_source);
    } catch (const model::ParseError&) {
      // Scoring stays possible; the missing template is the penalty.
    }
  }
  return r;
}

int count_format_components(const StructuredResponse& r) {
  return static_cast<int>(r.spans.size());
}

TokenizedResponse label_tokens(const StructuredResponse& r) {
  struct Labeled {
    Span span;
    SegmentLabel label;
  };
  std::vector<Labeled> segments;
  for (auto [key, label] : {std::pair{"strategy", SegmentLabel::Strategy},
                            {"modeling", SegmentLabel::Modeling},
                            {"check", SegmentLabel::Check}}) {
    auto it = r.spans.find(key);
    if (it != r.spans.end()) segments.push_back({it->second, label});
  }

  TokenizedResponse out;
  const std::string& s = r.raw;
  size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    SegmentLabel label = SegmentLabel::Other;
    for (const auto& seg : segments) {
      if (seg.span.contains(b, i)) {
        label = seg.label;
        break;
      }
    }
    out.tokens.push_back({s.substr(b, i - b), label});
  }
  return out;
}

}  // namespace sageforge::response
