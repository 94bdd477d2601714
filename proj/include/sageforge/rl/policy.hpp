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

#ifndef SAGEFORGE_RL_POLICY_HPP
#define SAGEFORGE_RL_POLICY_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sageforge/response/response.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/synth/synth.hpp"
#include "sageforge/util/rng.hpp"

namespace sageforge::rl {

using response::SegmentLabel;

/// A corpus sample that does not fit the policy's decision schema.
struct UnrenderableSample : std::runtime_error {
  explicit UnrenderableSample(const std::string& msg)
      : std::runtime_error(msg) {}
};

struct TrajectoryToken {
  std::string text;
  SegmentLabel segment = SegmentLabel::Other;
  int decision = -1;  // schema decision this token carries, -1 for filler
};

/// One sampled response: the decision sequence, its token stream, and the
/// rendered text. Filler tokens carry probability one; each decision's
/// probability rides on the first token of its segment.
struct Trajectory {
  std::vector<int> choices;
  std::vector<TrajectoryToken> tokens;
  std::string text;
};

/// The trainable response distribution. Implementations map a prompt to a
/// token-level distribution over full responses; gradients are taken with
/// respect to a flat parameter vector.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual Trajectory sample(const std::string& prompt,
                            Rng& rng) const = 0;

  /// Per-token log-probabilities of the trajectory under the current
  /// parameters. Fillers are 0.
  virtual std::vector<double> logprob(const std::string& prompt,
                                      const Trajectory& t) const = 0;

  /// Adds the gradient of sum_t weights[t] * logprob[t] into grad, which
  /// must be sized like the parameter vector.
  virtual void accumulate(const std::string& prompt, const Trajectory& t,
                          const std::vector<double>& token_weights,
                          std::vector<double>& grad) const = 0;

  virtual std::vector<double> parameters() const = 0;
  virtual void set_parameters(const std::vector<double>& params) = 0;

  /// The segment each parameter belongs to, aligned with parameters().
  virtual std::vector<SegmentLabel> parameter_segments() const = 0;

  /// The trajectory a corpus sample stands for, under this policy's
  /// schema. Throws UnrenderableSample when the sample does not fit.
  virtual Trajectory render_sample(
      const synth::TrainingSample& sample) const = 0;

  /// Current probabilities of the strategy decision, keyed by option
  /// label.
  virtual std::map<std::string, double> strategy_probabilities(
      const std::string& prompt) const = 0;

  virtual std::unique_ptr<Policy> clone() const = 0;
};

struct DecisionOption {
  std::string label;
  std::string text;
};

struct DecisionSpec {
  std::string name;
  SegmentLabel segment = SegmentLabel::Other;
  std::vector<DecisionOption> options;
};

/// The decision schema of one prompt: the first decision picks the
/// strategy (and with it the emitted model code), middle decisions pick
/// modeling text, the last picks the check note.
struct PromptSchema {
  std::string prompt;
  std::vector<DecisionSpec> decisions;
  std::vector<std::string> code_by_strategy;  // per strategy option
};

/// Schema whose options mirror a catalog family: one strategy option per
/// family strategy, with that strategy's notes as the modeling and check
/// choices.
PromptSchema schema_for_family(const synth::FamilySpec& family,
                               const std::string& prompt_id);

/// Softmax policy over per-prompt categorical decisions. Each decision d
/// of prompt p owns a logit row theta[p][d][*]; everything outside the
/// decisions (tags, template glue, model code) is emitted with
/// probability one. Rendered responses always parse with all five
/// template components.
class StructuredChoicePolicy : public Policy {
 public:
  /// Registers a prompt with uniform (all-zero) logits. Validates the
  /// schema shape: strategy first, check last, modeling between, at least
  /// one option per decision, one code text per strategy option.
  void add_prompt(PromptSchema schema);

  bool has_prompt(const std::string& prompt) const;
  const PromptSchema& schema(const std::string& prompt) const;

  /// Deterministic expansion of a full choice vector.
  Trajectory render(const std::string& prompt,
                    const std::vector<int>& choices) const;

  /// Probabilities of one decision's options under the current logits.
  std::vector<double> decision_probabilities(const std::string& prompt,
                                             int decision) const;

  /// Inverse rendering: the choice vector a sample stands for. Throws
  /// UnrenderableSample.
  std::vector<int> recover_choices(const synth::TrainingSample& s) const;

  Trajectory sample(const std::string& prompt,
                    Rng& rng) const override;
  std::vector<double> logprob(const std::string& prompt,
                              const Trajectory& t) const override;
  void accumulate(const std::string& prompt, const Trajectory& t,
                  const std::vector<double>& token_weights,
                  std::vector<double>& grad) const override;
  std::vector<double> parameters() const override;
  void set_parameters(const std::vector<double>& params) override;
  std::vector<SegmentLabel> parameter_segments() const override;
  Trajectory render_sample(
      const synth::TrainingSample& sample) const override;
  std::map<std::string, double> strategy_probabilities(
      const std::string& prompt) const override;
  std::unique_ptr<Policy> clone() const override;

 private:
  struct Entry {
    PromptSchema schema;
    std::vector<std::vector<double>> logits;  // [decision][option]
  };

  const Entry& entry(const std::string& prompt) const;
  size_t flat_offset(const std::string& prompt, int decision) const;

  std::map<std::string, Entry> prompts_;
};

}  // namespace sageforge::rl

#endif  // SAGEFORGE_RL_POLICY_HPP
