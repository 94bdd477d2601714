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

#include "sageforge/rl/policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace sageforge::rl {

namespace {

/// Whitespace-splits text into trajectory tokens. The first token carries
/// the decision index; the rest keep only the segment label.
void push_tokens(std::vector<TrajectoryToken>& out, const std::string& text,
                 SegmentLabel segment, int decision) {
  size_t i = 0;
  bool first = true;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) {
      out.push_back({text.substr(start, i - start), segment,
                     first ? decision : -1});
      first = false;
    }
  }
}

std::vector<double> softmax(const std::vector<double>& logits) {
  double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

double log_softmax_at(const std::vector<double>& logits, int choice) {
  double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - m);
  return logits[(size_t)choice] - m - std::log(z);
}

std::string span_text(const std::string& raw, const response::Span& span) {
  return raw.substr(span.begin, span.end - span.begin);
}

}  // namespace

PromptSchema schema_for_family(const synth::FamilySpec& family,
                               const std::string& prompt_id) {
  PromptSchema schema;
  schema.prompt = prompt_id;
  DecisionSpec strategy{"strategy", SegmentLabel::Strategy, {}};
  DecisionSpec modeling{"modeling", SegmentLabel::Modeling, {}};
  DecisionSpec check{"check", SegmentLabel::Check, {}};
  for (const auto& s : family.strategies) {
    strategy.options.push_back({s.name, s.name + ": " + s.description});
    modeling.options.push_back({s.name, s.modeling_note});
    check.options.push_back({s.name, s.check_note});
    schema.code_by_strategy.push_back(s.model_template);
  }
  schema.decisions = {std::move(strategy), std::move(modeling),
                      std::move(check)};
  return schema;
}

void StructuredChoicePolicy::add_prompt(PromptSchema schema) {
  if (schema.decisions.size() < 2)
    throw std::invalid_argument("schema needs strategy and check decisions");
  if (schema.decisions.front().segment != SegmentLabel::Strategy)
    throw std::invalid_argument("first decision must pick the strategy");
  if (schema.decisions.back().segment != SegmentLabel::Check)
    throw std::invalid_argument("last decision must pick the check note");
  for (size_t d = 1; d + 1 < schema.decisions.size(); ++d)
    if (schema.decisions[d].segment != SegmentLabel::Modeling)
      throw std::invalid_argument("middle decisions must be modeling picks");
  for (const auto& dec : schema.decisions) {
    if (dec.options.empty())
      throw std::invalid_argument("decision " + dec.name + " has no options");
    for (const auto& opt : dec.options)
      if (opt.text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw std::invalid_argument("option " + opt.label +
                                    " renders no tokens");
  }
  if (schema.code_by_strategy.size() !=
      schema.decisions.front().options.size())
    throw std::invalid_argument("one code text per strategy option required");

  Entry e;
  e.logits.resize(schema.decisions.size());
  for (size_t d = 0; d < schema.decisions.size(); ++d)
    e.logits[d].assign(schema.decisions[d].options.size(), 0.0);
  std::string key = schema.prompt;
  e.schema = std::move(schema);
  prompts_[key] = std::move(e);
}

bool StructuredChoicePolicy::has_prompt(const std::string& prompt) const {
  return prompts_.count(prompt) > 0;
}

const PromptSchema& StructuredChoicePolicy::schema(
    const std::string& prompt) const {
  return entry(prompt).schema;
}

const StructuredChoicePolicy::Entry& StructuredChoicePolicy::entry(
    const std::string& prompt) const {
  auto it = prompts_.find(prompt);
  if (it == prompts_.end())
    throw std::out_of_range("unknown prompt: " + prompt);
  return it->second;
}

size_t StructuredChoicePolicy::flat_offset(const std::string& prompt,
                                           int decision) const {
  size_t off = 0;
  for (const auto& [key, e] : prompts_) {
    for (size_t d = 0; d < e.logits.size(); ++d) {
      if (key == prompt && (int)d == decision) return off;
      off += e.logits[d].size();
    }
  }
  throw std::out_of_range("unknown decision for prompt: " + prompt);
}

Trajectory StructuredChoicePolicy::render(
    const std::string& prompt, const std::vector<int>& choices) const {
  const Entry& e = entry(prompt);
  const auto& decisions = e.schema.decisions;
  if (choices.size() != decisions.size())
    throw std::invalid_argument("choice vector does not match the schema");
  for (size_t d = 0; d < choices.size(); ++d)
    if (choices[d] < 0 || (size_t)choices[d] >= decisions[d].options.size())
      throw std::invalid_argument("choice out of range");

  Trajectory t;
  t.choices = choices;

  auto piece = [&](const std::string& text, SegmentLabel segment,
                   int decision) {
    t.text += text;
    push_tokens(t.tokens, text, segment, decision);
  };

  piece("<think>\n<strategy>", SegmentLabel::Other, -1);
  piece(decisions[0].options[(size_t)choices[0]].text,
        SegmentLabel::Strategy, 0);
  piece("</strategy>\n<modeling>", SegmentLabel::Other, -1);
  for (size_t d = 1; d + 1 < decisions.size(); ++d) {
    if (d > 1) piece(" ", SegmentLabel::Other, -1);
    piece(decisions[d].options[(size_t)choices[d]].text,
          SegmentLabel::Modeling, (int)d);
  }
  piece("</modeling>\n<check>", SegmentLabel::Other, -1);
  piece(decisions.back().options[(size_t)choices.back()].text,
        SegmentLabel::Check, (int)decisions.size() - 1);
  piece("</check>\n</think>\n```\n", SegmentLabel::Other, -1);
  const std::string& code = e.schema.code_by_strategy[(size_t)choices[0]];
  piece(code, SegmentLabel::Other, -1);
  if (!code.empty() && code.back() != '\n')
    piece("\n", SegmentLabel::Other, -1);
  piece("```\n", SegmentLabel::Other, -1);
  return t;
}

std::vector<double> StructuredChoicePolicy::decision_probabilities(
    const std::string& prompt, int decision) const {
  const Entry& e = entry(prompt);
  return softmax(e.logits.at((size_t)decision));
}

std::vector<int> StructuredChoicePolicy::recover_choices(
    const synth::TrainingSample& s) const {
  if (!has_prompt(s.problem_id))
    throw UnrenderableSample("no schema for problem " + s.problem_id);
  const Entry& e = entry(s.problem_id);
  const auto& decisions = e.schema.decisions;

  auto parsed = response::parse_response(s.reasoning);
  auto find_span = [&](const char* key) -> std::string {
    auto it = parsed.spans.find(key);
    if (it == parsed.spans.end())
      throw UnrenderableSample(std::string("sample lacks a ") + key +
                               " segment");
    return span_text(s.reasoning, it->second);
  };
  std::string strategy_text = find_span("strategy");
  std::string modeling_text = find_span("modeling");
  std::string check_text = find_span("check");

  std::vector<int> choices(decisions.size(), -1);

  const auto& strategy_opts = decisions.front().options;
  for (size_t o = 0; o < strategy_opts.size(); ++o)
    if (strategy_opts[o].text == strategy_text ||
        strategy_opts[o].label == s.strategy_name)
      choices[0] = (int)o;
  if (choices[0] < 0)
    throw UnrenderableSample("strategy not in schema: " + s.strategy_name);

  // Middle decisions consume the modeling text greedily, in order,
  // separated by single spaces.
  std::string remaining = modeling_text;
  for (size_t d = 1; d + 1 < decisions.size(); ++d) {
    const auto& opts = decisions[d].options;
    for (size_t o = 0; o < opts.size(); ++o) {
      const std::string& text = opts[o].text;
      if (remaining.rfind(text, 0) != 0) continue;
      if (remaining.size() > text.size() && remaining[text.size()] != ' ')
        continue;
      choices[d] = (int)o;
      remaining.erase(0, std::min(remaining.size(), text.size() + 1));
      break;
    }
    if (choices[d] < 0)
      throw UnrenderableSample("modeling text not in schema");
  }
  if (!remaining.empty())
    throw UnrenderableSample("modeling text not in schema");

  const auto& check_opts = decisions.back().options;
  for (size_t o = 0; o < check_opts.size(); ++o)
    if (check_opts[o].text == check_text) choices.back() = (int)o;
  if (choices.back() < 0)
    throw UnrenderableSample("check text not in schema");
  return choices;
}

Trajectory StructuredChoicePolicy::sample(const std::string& prompt,
                                          Rng& rng) const {
  const Entry& e = entry(prompt);
  std::vector<int> choices;
  for (const auto& logits : e.logits) {
    std::vector<double> p = softmax(logits);
    double u = rng.uniform01();
    double acc = 0.0;
    int pick = (int)p.size() - 1;
    for (size_t o = 0; o < p.size(); ++o) {
      acc += p[o];
      if (u < acc) {
        pick = (int)o;
        break;
      }
    }
    choices.push_back(pick);
  }
  return render(prompt, choices);
}

std::vector<double> StructuredChoicePolicy::logprob(
    const std::string& prompt, const Trajectory& t) const {
  const Entry& e = entry(prompt);
  std::vector<double> out(t.tokens.size(), 0.0);
  for (size_t i = 0; i < t.tokens.size(); ++i) {
    int d = t.tokens[i].decision;
    if (d < 0) continue;
    out[i] = log_softmax_at(e.logits.at((size_t)d),
                            t.choices.at((size_t)d));
  }
  return out;
}

void StructuredChoicePolicy::accumulate(
    const std::string& prompt, const Trajectory& t,
    const std::vector<double>& token_weights,
    std::vector<double>& grad) const {
  if (token_weights.size() != t.tokens.size())
    throw std::invalid_argument("one weight per trajectory token required");
  const Entry& e = entry(prompt);
  for (size_t i = 0; i < t.tokens.size(); ++i) {
    int d = t.tokens[i].decision;
    if (d < 0 || token_weights[i] == 0.0) continue;
    size_t base = flat_offset(prompt, d);
    std::vector<double> p = softmax(e.logits.at((size_t)d));
    int chosen = t.choices.at((size_t)d);
    for (size_t o = 0; o < p.size(); ++o)
      grad.at(base + o) +=
          token_weights[i] * (((int)o == chosen ? 1.0 : 0.0) - p[o]);
  }
}

std::vector<double> StructuredChoicePolicy::parameters() const {
  std::vector<double> out;
  for (const auto& [key, e] : prompts_)
    for (const auto& row : e.logits)
      out.insert(out.end(), row.begin(), row.end());
  return out;
}

void StructuredChoicePolicy::set_parameters(
    const std::vector<double>& params) {
  size_t off = 0;
  for (auto& [key, e] : prompts_)
    for (auto& row : e.logits)
      for (double& v : row) {
        if (off >= params.size())
          throw std::invalid_argument("parameter vector too short");
        v = params[off++];
      }
  if (off != params.size())
    throw std::invalid_argument("parameter vector too long");
}

std::vector<SegmentLabel> StructuredChoicePolicy::parameter_segments() const {
  std::vector<SegmentLabel> out;
  for (const auto& [key, e] : prompts_)
    for (size_t d = 0; d < e.logits.size(); ++d)
      out.insert(out.end(), e.logits[d].size(),
                 e.schema.decisions[d].segment);
  return out;
}

Trajectory StructuredChoicePolicy::render_sample(
    const synth::TrainingSample& sample) const {
  return render(sample.problem_id, recover_choices(sample));
}

std::map<std::string, double> StructuredChoicePolicy::strategy_probabilities(
    const std::string& prompt) const {
  const Entry& e = entry(prompt);
  std::vector<double> p = softmax(e.logits.front());
  std::map<std::string, double> out;
  for (size_t o = 0; o < p.size(); ++o)
    out[e.schema.decisions.front().options[o].label] = p[o];
  return out;
}

std::unique_ptr<Policy> StructuredChoicePolicy::clone() const {
  return std::make_unique<StructuredChoicePolicy>(*this);
}

}  // namespace sageforge::rl
