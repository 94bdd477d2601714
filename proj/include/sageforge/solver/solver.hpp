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

#ifndef SAGEFORGE_SOLVER_SOLVER_HPP
#define SAGEFORGE_SOLVER_SOLVER_HPP

#include <map>
#include <string>

#include "sageforge/model/flat.hpp"

namespace sageforge::solver {

enum class SolveStatus { Optimal, Infeasible, Unbounded, LimitReached, Error };

const char* to_string(SolveStatus s);

struct SolveConfig {
  double feas_tol = 1e-6;
  double int_tol = 1e-6;
  long max_iterations = 1000000;
  long max_nodes = 100000;
  double time_limit_seconds = 60.0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;  // meaningful iff Optimal
  std::map<std::string, double> solution;  // filled iff Optimal
  long iterations = 0;  // simplex pivots and bound flips, summed over nodes
  long nodes = 0;       // LP relaxations solved (0 for pure LP solves)
  double gap = 0.0;     // |best bound - incumbent| / max(1e-10, |incumbent|)
  double solve_time_seconds = 0.0;
};

/// Bounded-variable two-phase primal simplex. Integrality is ignored.
SolveReport solve_lp(const model::FlatModel& m, const SolveConfig& cfg = {});

/// Branch and bound over solve_lp: best-bound node selection (ties pop the
/// newest node), most-fractional branching (ties pick the lowest variable
/// index).
SolveReport solve_milp(const model::FlatModel& m, const SolveConfig& cfg = {});

/// Dispatches on whether any variable is integer or binary.
SolveReport solve(const model::FlatModel& m, const SolveConfig& cfg = {});

enum class AnswerVerdict { Match, Mismatch, NotOptimal };

/// Compares a solved objective against an expected value:
/// |obj - expected| <= abs_tol + rel_tol * |expected|.
AnswerVerdict check_answer(const SolveReport& report, double expected,
                           double abs_tol = 1e-6, double rel_tol = 1e-4);

}  // namespace sageforge::solver

#endif  // SAGEFORGE_SOLVER_SOLVER_HPP
