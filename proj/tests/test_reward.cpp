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

#include <doctest.h>

#include <cmath>
#include <string>

#include "sageforge/reward/reward.hpp"

using namespace sageforge;
using namespace sageforge::reward;

namespace {

// 1 - tanh computed independently in extended precision.
double one_minus_tanh_oracle(double x) {
  long double e = expl(2.0L * (long double)x);
  return (double)(2.0L / (e + 1.0L));
}

std::string wrap_template(const std::string& code) {
  return "<think>\n"
         "<strategy>direct formulation</strategy>\n"
         "<modeling>variables with bounds</modeling>\n"
         "<check>unit-audit-clear</check>\n"
         "</think>\n"
         "```\n" +
         code + "```\n";
}

const char* kMinModel =
    "var x continuous >= 0;\nminimize obj: 2 * x;\nsubject to c: x >= 3;\n";

ScoringInstance scalar_instance(double gt) {
  ScoringInstance inst;
  inst.ground_truth = gt;
  inst.problem_class = ProblemClass::LP;
  return inst;
}

}  // namespace

TEST_SUITE_BEGIN("reward");

TEST_CASE("format reward is per-component times count") {
  RewardConfig cfg;
  auto full = response::parse_response(wrap_template(kMinModel));
  CHECK(format_reward(full, cfg) == cfg.per_component * 5);
  CHECK(format_reward(full, cfg) == 1.0);

  auto none = response::parse_response("prose");
  CHECK(format_reward(none, cfg) == 0.0);

  auto partial = response::parse_response("<think>t</think>\n```\nz\n```");
  CHECK(format_reward(partial, cfg) == cfg.per_component * 2);
}

TEST_CASE("outcome tiers") {
  RewardConfig cfg;
  ExecutionResult exec;

  SUBCASE("not executed") {
    auto [r, k] = outcome_reward(exec, cfg);
    CHECK(r == 0.0);
    CHECK(k == OutcomeKind::ExecutionFailure);
  }
  SUBCASE("infeasible") {
    exec.executed = true;
    exec.report.status = solver::SolveStatus::Infeasible;
    auto [r, k] = outcome_reward(exec, cfg);
    CHECK(r == cfg.tier_infeasible);
    CHECK(k == OutcomeKind::Infeasible);
  }
  SUBCASE("optimal and matching") {
    exec.executed = true;
    exec.report.status = solver::SolveStatus::Optimal;
    exec.report.objective = 305.0000001;
    exec.ground_truth = 305.0;
    auto [r, k] = outcome_reward(exec, cfg);
    CHECK(r == cfg.tier_correct);
    CHECK(k == OutcomeKind::Correct);
  }
  SUBCASE("optimal but wrong") {
    exec.executed = true;
    exec.report.status = solver::SolveStatus::Optimal;
    exec.report.objective = 300.0;
    exec.ground_truth = 305.0;
    auto [r, k] = outcome_reward(exec, cfg);
    CHECK(r == cfg.tier_incorrect);
    CHECK(k == OutcomeKind::Incorrect);
  }
  SUBCASE("optimal with no reference counts as correct") {
    exec.executed = true;
    exec.report.status = solver::SolveStatus::Optimal;
    exec.report.objective = 1.0;
    auto [r, k] = outcome_reward(exec, cfg);
    CHECK(k == OutcomeKind::Correct);
    CHECK(r == cfg.tier_correct);
  }
  SUBCASE("non-answers score as execution failures") {
    exec.executed = true;
    for (auto st : {solver::SolveStatus::Unbounded,
                    solver::SolveStatus::LimitReached,
                    solver::SolveStatus::Error}) {
      exec.report.status = st;
      auto [r, k] = outcome_reward(exec, cfg);
      CHECK(r == cfg.tier_exec_fail);
      CHECK(k == OutcomeKind::ExecutionFailure);
    }
  }
}

TEST_CASE("efficiency metric normalization") {
  RewardConfig cfg;
  solver::SolveReport rep;
  rep.status = solver::SolveStatus::Optimal;

  rep.iterations = 29;
  CHECK(efficiency_metric(rep, ProblemClass::LP, cfg) == 29.0 / 15.0);
  rep.iterations = 0;
  CHECK(efficiency_metric(rep, ProblemClass::LP, cfg) == 0.0);

  rep.gap = 0.0;
  rep.nodes = 1;
  CHECK(efficiency_metric(rep, ProblemClass::MILP, cfg) == 0.1);
  rep.gap = 1.0 / 3.0;
  rep.nodes = 5;
  CHECK(efficiency_metric(rep, ProblemClass::MILP, cfg) ==
        doctest::Approx(1.0).epsilon(1e-15));

  RewardConfig scaled = cfg;
  scaled.alpha_eff_milp = 2.0;
  CHECK(efficiency_metric(rep, ProblemClass::MILP, scaled) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("efficiency reward matches an independent oracle") {
  RewardConfig cfg;
  CHECK(efficiency_reward(0.0, cfg) == 1.0);
  for (double m : {0.01, 0.1, 0.5, 1.0, 29.0 / 15.0, 3.0, 10.0}) {
    double got = efficiency_reward(m, cfg);
    CHECK(std::fabs(got - one_minus_tanh_oracle(m)) <= 1e-12);
    CHECK(got > 0.0);
    CHECK(got < 1.0);
  }
  CHECK(efficiency_reward(1.0, cfg) > efficiency_reward(2.0, cfg));
  CHECK(efficiency_reward(50.0, cfg) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("composite pipeline on a correct response") {
  RewardConfig cfg;
  solver::SolveConfig scfg;
  auto b = composite_reward(wrap_template(kMinModel), scalar_instance(6.0),
                            scfg, cfg);
  CHECK(b.n_seg == 5);
  CHECK(b.r_format == 1.0);
  CHECK(b.outcome_kind == OutcomeKind::Correct);
  CHECK(b.r_outcome == 1.0);
  REQUIRE(b.m.has_value());
  CHECK(b.r_efficiency == efficiency_reward(*b.m, cfg));
  CHECK(b.r_efficiency > 0.0);
  CHECK(b.total == b.r_format + b.r_outcome + b.r_efficiency);
  CHECK(b.total < 3.0);
}

TEST_CASE("composite pipeline failure modes") {
  RewardConfig cfg;
  solver::SolveConfig scfg;

  SUBCASE("empty response scores zero") {
    auto b = composite_reward(std::string(), scalar_instance(6.0), scfg, cfg);
    CHECK(b.total == 0.0);
    CHECK(b.outcome_kind == OutcomeKind::ExecutionFailure);
    CHECK(!b.m.has_value());
  }
  SUBCASE("perfect template with unparseable code keeps only format") {
    auto b = composite_reward(wrap_template("var var;\n"),
                              scalar_instance(6.0), scfg, cfg);
    CHECK(b.n_seg == 5);
    CHECK(b.r_outcome == 0.0);
    CHECK(b.total == 1.0);
  }
  SUBCASE("grounding failure keeps only format") {
    auto b = composite_reward(
        wrap_template("set S;\nvar x{i in S} continuous >= 0;\n"
                      "minimize o: sum {i in S} x[i];\n"),
        scalar_instance(0.0), scfg, cfg);
    CHECK(b.outcome_kind == OutcomeKind::ExecutionFailure);
    CHECK(b.total == 1.0);
  }
  SUBCASE("wrong answer lands in the incorrect tier") {
    auto b = composite_reward(wrap_template(kMinModel), scalar_instance(7.0),
                              scfg, cfg);
    CHECK(b.outcome_kind == OutcomeKind::Incorrect);
    CHECK(b.r_outcome == cfg.tier_incorrect);
    CHECK(b.r_efficiency == 0.0);
    CHECK(!b.m.has_value());
    CHECK(b.total == 1.0 + 0.4);
  }
  SUBCASE("infeasible model") {
    auto b = composite_reward(
        wrap_template("var x continuous >= 0;\nminimize o: x;\n"
                      "subject to lo: x >= 5;\nsubject to hi: x <= 3;\n"),
        scalar_instance(0.0), scfg, cfg);
    CHECK(b.outcome_kind == OutcomeKind::Infeasible);
    CHECK(b.total == 1.0 + cfg.tier_infeasible);
  }
  SUBCASE("unbounded model is a non-answer") {
    auto b = composite_reward(
        wrap_template("var x continuous <= 0;\nminimize o: x;\n"
                      "subject to c: x <= 0;\n"),
        scalar_instance(0.0), scfg, cfg);
    CHECK(b.outcome_kind == OutcomeKind::ExecutionFailure);
    CHECK(b.total == 1.0);
  }
}

TEST_CASE("integer instances use the aggregated metric") {
  RewardConfig cfg;
  solver::SolveConfig scfg;
  ScoringInstance inst;
  inst.problem_class = ProblemClass::MILP;
  inst.ground_truth = 1.0;
  // One binary with a single row; the relaxation is already integral, so
  // the tree is one node with no remaining gap.
  auto b = composite_reward(
      wrap_template("var t binary;\nmaximize o: t;\nsubject to c: t <= 1;\n"),
      inst, scfg, cfg);
  REQUIRE(b.outcome_kind == OutcomeKind::Correct);
  REQUIRE(b.m.has_value());
  CHECK(*b.m == 0.1);
  CHECK(b.r_efficiency == efficiency_reward(0.1, cfg));
}

TEST_CASE("tier ordering across responses") {
  RewardConfig cfg;
  solver::SolveConfig scfg;
  auto correct = composite_reward(wrap_template(kMinModel),
                                  scalar_instance(6.0), scfg, cfg);
  auto wrong = composite_reward(wrap_template(kMinModel),
                                scalar_instance(10.0), scfg, cfg);
  auto infeasible = composite_reward(
      wrap_template("var x continuous >= 0;\nminimize o: x;\n"
                    "subject to lo: x >= 5;\nsubject to hi: x <= 3;\n"),
      scalar_instance(6.0), scfg, cfg);
  auto broken = composite_reward(wrap_template("nonsense"),
                                 scalar_instance(6.0), scfg, cfg);
  CHECK(correct.r_outcome > infeasible.r_outcome);
  CHECK(infeasible.r_outcome > broken.r_outcome);
  CHECK(wrong.r_outcome > infeasible.r_outcome);
  CHECK(correct.r_outcome > wrong.r_outcome);
}

TEST_SUITE_END();
