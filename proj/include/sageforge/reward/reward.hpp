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

#ifndef SAGEFORGE_REWARD_REWARD_HPP
#define SAGEFORGE_REWARD_REWARD_HPP

#include <optional>
#include <string>
#include <utility>

#include "sageforge/model/data.hpp"
#include "sageforge/response/response.hpp"
#include "sageforge/solver/solver.hpp"

namespace sageforge::reward {

struct RewardConfig {
  double per_component = 0.2;  // format credit per template component

  // Outcome tiers, non-decreasing.
  double tier_exec_fail = 0.0;
  double tier_infeasible = 0.2;
  double tier_incorrect = 0.4;
  double tier_correct = 1.0;

  // Efficiency normalizers. LP divides iterations by alpha_iter; integer
  // solves aggregate the relative gap and node count with the beta weights
  // and divide once more by alpha_eff_milp.
  double alpha_iter = 15.0;
  double alpha_gap = 1.0 / 3.0;
  double alpha_nodes = 5.0;
  double beta_gap = 0.5;
  double beta_nodes = 0.5;
  double alpha_eff_milp = 1.0;

  // Objective comparison tolerances for the correctness check.
  double check_abs_tol = 1e-6;
  double check_rel_tol = 1e-4;
};

enum class OutcomeKind { ExecutionFailure, Infeasible, Incorrect, Correct };

const char* to_string(OutcomeKind k);

enum class ProblemClass { LP, MILP };

/// What happened when the response's model was run: either the pipeline
/// died before the solver (parse or ground failure), or a solve finished
/// and left a report to judge against the optional ground truth.
struct ExecutionResult {
  bool executed = false;
  solver::SolveReport report;
  std::optional<double> ground_truth;
};

struct RewardBreakdown {
  double r_format = 0.0;
  double r_outcome = 0.0;
  double r_efficiency = 0.0;
  double total = 0.0;
  int n_seg = 0;
  std::optional<double> m;  // efficiency metric, present iff outcome correct
  OutcomeKind outcome_kind = OutcomeKind::ExecutionFailure;
};

/// The scoring context for one problem instance.
struct ScoringInstance {
  model::DataBinding data;
  std::optional<double> ground_truth;
  ProblemClass problem_class = ProblemClass::LP;
};

double format_reward(const response::StructuredResponse& r,
                     const RewardConfig& cfg);

std::pair<double, OutcomeKind> outcome_reward(const ExecutionResult& exec,
                                              const RewardConfig& cfg);

/// Pre-normalized efficiency metric M; only meaningful for an optimal
/// report.
double efficiency_metric(const solver::SolveReport& rep, ProblemClass cls,
                         const RewardConfig& cfg);

/// 1 - tanh(M): 1 at M = 0, strictly decreasing, tending to 0.
double efficiency_reward(double m, const RewardConfig& cfg);

/// Full pipeline: parse the response, ground its model against the
/// instance data, solve, and score. Every failure mode lands in a reward
/// tier; nothing throws.
RewardBreakdown composite_reward(const std::string& response_text,
                                 const ScoringInstance& instance,
                                 const solver::SolveConfig& solver_cfg,
                                 const RewardConfig& cfg);

/// Same pipeline starting from an already parsed response.
RewardBreakdown composite_reward(const response::StructuredResponse& parsed,
                                 const ScoringInstance& instance,
                                 const solver::SolveConfig& solver_cfg,
                                 const RewardConfig& cfg);

}  // namespace sageforge::reward

#endif  // SAGEFORGE_REWARD_REWARD_HPP
