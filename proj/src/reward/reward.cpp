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

#include "sageforge/reward/reward.hpp"

#include <cmath>

#include "sageforge/model/flat.hpp"

namespace sageforge::reward {

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::ExecutionFailure: return "execution_failure";
    case OutcomeKind::Infeasible: return "infeasible";
    case OutcomeKind::Incorrect: return "incorrect";
    case OutcomeKind::Correct: return "correct";
  }
  return "?";
}

double format_reward(const response::StructuredResponse& r,
                     const RewardConfig& cfg) {
  return cfg.per_component * response::count_format_components(r);
}

std::pair<double, OutcomeKind> outcome_reward(const ExecutionResult& exec,
                                              const RewardConfig& cfg) {
  if (!exec.executed)
    return {cfg.tier_exec_fail, OutcomeKind::ExecutionFailure};
  switch (exec.report.status) {
    case solver::SolveStatus::Infeasible:
      return {cfg.tier_infeasible, OutcomeKind::Infeasible};
    case solver::SolveStatus::Optimal:
      break;
    default:
      // Unbounded, limit hit, numeric error: no usable answer.
      return {cfg.tier_exec_fail, OutcomeKind::ExecutionFailure};
  }
  if (!exec.ground_truth)
    return {cfg.tier_correct, OutcomeKind::Correct};
  auto verdict = solver::check_answer(exec.report, *exec.ground_truth,
                                      cfg.check_abs_tol, cfg.check_rel_tol);
  if (verdict == solver::AnswerVerdict::Match)
    return {cfg.tier_correct, OutcomeKind::Correct};
  return {cfg.tier_incorrect, OutcomeKind::Incorrect};
}

double efficiency_metric(const solver::SolveReport& rep, ProblemClass cls,
                         const RewardConfig& cfg) {
  if (cls == ProblemClass::LP)
    return static_cast<double>(rep.iterations) / cfg.alpha_iter;
  double aggregated =
      cfg.beta_gap * (rep.gap / cfg.alpha_gap) +
      cfg.beta_nodes * (static_cast<double>(rep.nodes) / cfg.alpha_nodes);
  return aggregated / cfg.alpha_eff_milp;
}

double efficiency_reward(double m, const RewardConfig&) {
  return 1.0 - std::tanh(m);
}

RewardBreakdown composite_reward(const response::StructuredResponse& parsed,
                                 const ScoringInstance& instance,
                                 const solver::SolveConfig& solver_cfg,
                                 const RewardConfig& cfg) {
  RewardBreakdown out;
  out.n_seg = response::count_format_components(parsed);
  out.r_format = format_reward(parsed, cfg);

  ExecutionResult exec;
  exec.ground_truth = instance.ground_truth;
  if (parsed.parsed) {
    try {
      model::FlatModel flat = model::ground(*parsed.parsed, instance.data);
      exec.report = solver::solve(flat, solver_cfg);
      exec.executed = true;
    } catch (const model::GroundError&) {
      // Stays an execution failure.
    }
  }

  auto [r_out, kind] = outcome_reward(exec, cfg);
  out.r_outcome = r_out;
  out.outcome_kind = kind;
  if (kind == OutcomeKind::Correct) {
    out.m = efficiency_metric(exec.report, instance.problem_class, cfg);
    out.r_efficiency = efficiency_reward(*out.m, cfg);
  }
  out.total = out.r_format + out.r_outcome + out.r_efficiency;
  return out;
}

RewardBreakdown composite_reward(const std::string& response_text,
                                 const ScoringInstance& instance,
                                 const solver::SolveConfig& solver_cfg,
                                 const RewardConfig& cfg) {
  return composite_reward(response::parse_response(response_text), instance,
                          solver_cfg, cfg);
}

}  // namespace sageforge::reward
