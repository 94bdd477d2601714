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

#ifndef SAGEFORGE_SYNTH_SYNTH_HPP
#define SAGEFORGE_SYNTH_SYNTH_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sageforge/model/data.hpp"
#include "sageforge/reward/reward.hpp"
#include "sageforge/solver/solver.hpp"

namespace sageforge::synth {

struct SynthError : std::runtime_error {
  enum class Kind { UnknownFamily, GeneratorFailure };

  SynthError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}

  Kind kind;
};

struct ProblemInstance {
  std::string id;
  std::string question;
  model::DataBinding data;
  reward::ProblemClass problem_class = reward::ProblemClass::LP;
  std::optional<double> ground_truth;
  std::string family;
};

struct StrategyCandidate {
  int id = 0;  // 1-based rank within the proposal
  std::string name;
  std::string description;
  std::string realization_key;  // "<family>/<name>" for the reference gen
};

struct TrainingSample {
  std::string problem_id;
  int strategy_id = 0;
  std::string strategy_name;
  std::string reasoning;     // the think block of the response
  std::string model_source;  // the fenced model text
  bool verified = false;
  std::string canonical;  // digest of the grounded model, when known
};

/// The full response text a sample stands for: reasoning followed by the
/// fenced model.
std::string render_response(const TrainingSample& sample);

/// Strategy proposer and realizer. The reference implementation renders
/// deterministic per-family templates; external implementations bridge to
/// a text-generation endpoint and may be nondeterministic.
class Generator {
 public:
  virtual ~Generator() = default;

  /// Up to k candidates for the problem, ids 1..n.
  /// Throws SynthError(UnknownFamily) when the problem is not recognized.
  virtual std::vector<StrategyCandidate> propose(const ProblemInstance& p,
                                                 int k) = 0;

  /// (reasoning, model_source) for one candidate. External implementations
  /// throw SynthError(GeneratorFailure) on transport or protocol failure.
  virtual std::pair<std::string, std::string> realize(
      const ProblemInstance& p, const StrategyCandidate& s) = 0;
};

class ReferenceGenerator : public Generator {
 public:
  std::vector<StrategyCandidate> propose(const ProblemInstance& p,
                                         int k) override;
  std::pair<std::string, std::string> realize(
      const ProblemInstance& p, const StrategyCandidate& s) override;
};

std::vector<StrategyCandidate> propose_strategies(const ProblemInstance& p,
                                                  int k, Generator& gen);

TrainingSample realize(const ProblemInstance& p, const StrategyCandidate& s,
                       Generator& gen);

enum class DiscardReason { ExecutionFailure, Infeasible, Unbounded,
                           WrongAnswer };

const char* to_string(DiscardReason r);

struct VerifyOutcome {
  std::vector<TrainingSample> kept;  // verified, canonical digests set
  std::vector<std::pair<TrainingSample, DiscardReason>> discarded;
};

/// Runs each sample's model against its problem and keeps only top-tier
/// outcomes: parse + ground + solve to Optimal matching the ground truth.
VerifyOutcome verify_filter(const std::vector<TrainingSample>& samples,
                            const std::vector<ProblemInstance>& problems,
                            const solver::SolveConfig& solver_cfg,
                            const reward::RewardConfig& reward_cfg);

/// Optional extra merge test for dedup: return true when two verified
/// samples of the same problem should count as one strategy.
using JudgeHook =
    std::function<bool(const TrainingSample&, const TrainingSample&)>;

/// Drops equivalent formulations per problem (same canonical digest, or
/// judged equal), keeping the lowest strategy id of each group. Output is
/// ordered by (problem id, strategy id). Never compares across problems.
std::vector<TrainingSample> dedup(const std::vector<TrainingSample>& samples,
                                  const JudgeHook& judge = {});

struct ProblemReport {
  std::string problem_id;
  int proposed = 0;
  std::vector<int> kept_ids;
  int exec_failures = 0;
  int infeasible = 0;
  int unbounded = 0;
  int wrong_answer = 0;
  int dedup_merged = 0;
};

struct CorpusManifest {
  std::vector<ProblemReport> problems;
  int total_kept = 0;
  int total_discarded = 0;
  int total_dedup_merged = 0;
};

/// End-to-end phase-1 pipeline: propose, realize, verify, dedup, append.
/// Writes one JSON object per line to corpus_path and returns the manifest
/// (also written to manifest_path when non-empty).
CorpusManifest build_corpus(const std::vector<ProblemInstance>& problems,
                            int k, Generator& gen,
                            const solver::SolveConfig& solver_cfg,
                            const reward::RewardConfig& reward_cfg,
                            const std::string& corpus_path,
                            const std::string& manifest_path = {});

struct CorpusRecord {
  std::string id;
  std::string problem_id;
  int strategy_id = 0;
  std::string strategy_name;
  std::string reasoning;
  std::string model;
  std::optional<double> ground_truth;
  std::string canonical;
};

std::vector<CorpusRecord> load_corpus(const std::string& path);

// Catalog file I/O: a JSON array of problem instances.
std::string catalog_to_json(const std::vector<ProblemInstance>& problems);
std::vector<ProblemInstance> catalog_from_json(const std::string& json_text);

// External generator transports. The wire contract is one JSON request
// line {"prompt": text} answered by one JSON response line {"text": text}.
struct GeneratorSpec {
  enum class Kind { Reference, Subprocess, Tcp };
  Kind kind = Kind::Reference;
  std::string command;  // Subprocess: shell command to exec
  std::string host;     // Tcp
  int port = 0;         // Tcp
};

std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec);

}  // namespace sageforge::synth

#endif  // SAGEFORGE_SYNTH_SYNTH_HPP
