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
//
// Release gate: one PASS/FAIL line per criterion, each with a hard runtime
// budget. Every numeric expectation here is pinned against an oracle that
// does not share code with the implementation under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sageforge/model/canonical.hpp"
#include "sageforge/model/lpfile.hpp"
#include "sageforge/response/response.hpp"
#include "sageforge/reward/reward.hpp"
#include "sageforge/rl/rl.hpp"
#include "sageforge/scalebench/scalebench.hpp"
#include "sageforge/solver/solver.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/synth/synth.hpp"
#include "sageforge/util/rng.hpp"

namespace fs = std::filesystem;
using namespace sageforge;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const std::vector<synth::ProblemInstance>& catalog() {
  static const auto problems = synth::builtin_catalog();
  return problems;
}

const synth::ProblemInstance& problem(const std::string& id) {
  for (const auto& p : catalog())
    if (p.id == id) return p;
  throw std::runtime_error("missing catalog problem " + id);
}

const synth::StrategySpec& strategy(const std::string& family,
                                    const std::string& name) {
  const auto* spec = synth::find_family(family);
  if (!spec) throw std::runtime_error("missing family " + family);
  for (const auto& s : spec->strategies)
    if (s.name == name) return s;
  throw std::runtime_error("missing strategy " + name);
}

model::FlatModel ground_reference(const synth::ProblemInstance& p) {
  const auto* spec = synth::find_family(p.family);
  const auto& ref = spec->strategies.at((size_t)spec->reference_index);
  return model::ground(model::parse_model(ref.model_template), p.data);
}

// 1 - tanh computed from scratch in extended precision.
double one_minus_tanh_oracle(double x) {
  long double e = expl(2.0L * (long double)x);
  return (double)(2.0L / (e + 1.0L));
}

// --- criterion 1: format and outcome reward table ---

bool reward_table(std::string& why) {
  reward::RewardConfig cfg;
  const std::vector<std::string> texts = {
      "plain prose with no recognizable structure",
      "<think>direct formulation</think>",
      "<think>direct formulation</think>\n```\nz\n```\n",
      "<think><strategy>s</strategy> rest</think>\n```\nz\n```\n",
      "<think><strategy>s</strategy><modeling>m</modeling></think>\n"
      "```\nz\n```\n",
      "<think><strategy>s</strategy><modeling>m</modeling>"
      "<check>c</check></think>\n```\nz\n```\n",
  };
  std::vector<response::StructuredResponse> parsed;
  for (int n = 0; n <= 5; ++n) {
    parsed.push_back(response::parse_response(texts[(size_t)n]));
    int got = response::count_format_components(parsed.back());
    if (got != n) {
      why = "fixture for " + std::to_string(n) + " components parsed as " +
            std::to_string(got);
      return false;
    }
  }

  struct Tier {
    reward::OutcomeKind kind;
    double want;
    reward::ExecutionResult exec;
  };
  std::vector<Tier> tiers;
  {
    Tier t;
    t.kind = reward::OutcomeKind::ExecutionFailure;
    t.want = 0.0;
    t.exec.executed = false;
    tiers.push_back(t);
  }
  {
    Tier t;
    t.kind = reward::OutcomeKind::Infeasible;
    t.want = 0.2;
    t.exec.executed = true;
    t.exec.report.status = solver::SolveStatus::Infeasible;
    tiers.push_back(t);
  }
  {
    Tier t;
    t.kind = reward::OutcomeKind::Incorrect;
    t.want = 0.4;
    t.exec.executed = true;
    t.exec.report.status = solver::SolveStatus::Optimal;
    t.exec.report.objective = 11.0;
    t.exec.ground_truth = 10.0;
    tiers.push_back(t);
  }
  {
    Tier t;
    t.kind = reward::OutcomeKind::Correct;
    t.want = 1.0;
    t.exec.executed = true;
    t.exec.report.status = solver::SolveStatus::Optimal;
    t.exec.report.objective = 10.0;
    t.exec.ground_truth = 10.0;
    tiers.push_back(t);
  }

  for (int n = 0; n <= 5; ++n) {
    for (const auto& tier : tiers) {
      double r_format = reward::format_reward(parsed[(size_t)n], cfg);
      auto [r_outcome, kind] = reward::outcome_reward(tier.exec, cfg);
      double want_format = (double)n * 0.2;
      if (r_format != want_format) {
        why = "format reward for " + std::to_string(n) + " components is " +
              fmt(r_format) + ", want " + fmt(want_format);
        return false;
      }
      if (r_outcome != tier.want || kind != tier.kind) {
        why = std::string("outcome tier ") + reward::to_string(tier.kind) +
              " scored " + fmt(r_outcome) + ", want " + fmt(tier.want);
        return false;
      }
    }
  }
  return true;
}

// --- criterion 2: efficiency reward curve ---

bool efficiency_curve(std::string& why) {
  reward::RewardConfig cfg;
  std::vector<double> grid;
  for (int i = 0; i < 999; ++i) grid.push_back(5.0 * (double)i / 998.0);
  grid.push_back(29.0 / 15.0);
  for (double m : grid) {
    double got = reward::efficiency_reward(m, cfg);
    double want = one_minus_tanh_oracle(m);
    if (std::fabs(got - want) > 1e-12) {
      why = "at M=" + fmt(m) + " reward " + fmt(got) + " vs oracle " +
            fmt(want);
      return false;
    }
  }
  double special = reward::efficiency_reward(29.0 / 15.0, cfg);
  if (std::fabs(special - 0.0410) > 5e-5) {
    why = "reward at M=29/15 is " + fmt(special) + ", want about 0.0410";
    return false;
  }
  return true;
}

// --- criterion 3: solver optima against independent oracles ---

// Tightens infinite integer upper bounds so the box oracle can enumerate:
// rows a.x <= b with nonnegative coefficients imply x_j <= b/a_j for
// nonnegative variables, and `fallback` covers models whose optimum is
// provably inside [0, fallback]^n even though the feasible set is not.
model::FlatModel boxed_copy(const model::FlatModel& m, double fallback) {
  model::FlatModel out = m;
  for (size_t j = 0; j < out.vars.size(); ++j) {
    if (out.vars[j].upper != kInf) continue;
    if (out.vars[j].lower < 0.0)
      throw std::runtime_error("box tightening needs nonnegative variables");
    double ub = kInf;
    for (const auto& c : m.constraints) {
      if (c.sense != model::RelSense::Le || c.rhs < 0.0) continue;
      bool nonneg = true;
      double mine = 0.0;
      for (const auto& [idx, coef] : c.coefs) {
        if (coef < 0.0) nonneg = false;
        if (idx == j) mine = coef;
      }
      if (nonneg && mine > 0.0) ub = std::min(ub, c.rhs / mine);
    }
    if (ub == kInf) ub = fallback;
    if (ub == kInf)
      throw std::runtime_error("no finite bound for variable " +
                               out.vars[j].name);
    out.vars[j].upper = std::floor(ub + 1e-9);
  }
  return out;
}

bool solver_oracles(std::string& why) {
  const std::map<std::string, double> hand = {
      {"transportation", 305.0},
      {"project_assignment", 285.0},
      {"knapsack_selection", 3050.0},
  };
  for (const auto& p : catalog()) {
    model::FlatModel flat = ground_reference(p);
    solver::SolveReport rep = solver::solve(flat);
    if (rep.status != solver::SolveStatus::Optimal) {
      why = p.family + " did not solve to optimality";
      return false;
    }
    double want = 0.0;
    if (auto it = hand.find(p.family); it != hand.end()) {
      want = it->second;
    } else if (p.family == "diet") {
      auto oracle = oracles::lp_vertex_oracle(flat);
      if (!oracle.feasible) {
        why = "diet vertex oracle found no feasible point";
        return false;
      }
      want = oracle.objective;
    } else {
      // The cutting models minimize the total pattern count, so some
      // optimal solution fits in [0, total demand]^n.
      double fallback = kInf;
      if (p.family == "cutting_stock") {
        fallback = 0.0;
        for (const auto& [key, value] : p.data.params.at("Demand"))
          fallback += value;
      }
      auto oracle = oracles::milp_box_oracle(boxed_copy(flat, fallback));
      if (!oracle.feasible) {
        why = p.family + " box oracle found no feasible point";
        return false;
      }
      want = oracle.objective;
    }
    if (std::fabs(rep.objective - want) > 1e-6) {
      why = p.family + " solver " + fmt(rep.objective) + " vs oracle " +
            fmt(want);
      return false;
    }
  }
  return true;
}

// --- criterion 4: unit segment weights match a plain implementation ---

rl::Group random_group(Rng& rng, int rollouts) {
  rl::Group g;
  g.prompt = "p";
  const response::SegmentLabel labels[] = {
      response::SegmentLabel::Strategy, response::SegmentLabel::Modeling,
      response::SegmentLabel::Check, response::SegmentLabel::Other};
  for (int i = 0; i < rollouts; ++i) {
    rl::Rollout r;
    long n = rng.uniform_int(3, 13);
    r.traj.choices = {0};
    for (long t = 0; t < n; ++t) {
      r.traj.tokens.push_back({"t" + std::to_string(t),
                               labels[(size_t)rng.uniform_int(0, 4)], -1});
      double lp = -2.5 * rng.uniform01();
      r.logp_old.push_back(lp);
      r.logp_new.push_back(lp + 0.8 * (rng.uniform01() - 0.5));
      r.logp_ref.push_back(lp + 0.3 * (rng.uniform01() - 0.5));
    }
    g.rollouts.push_back(std::move(r));
    g.rewards.push_back(3.0 * rng.uniform01());
  }
  g.advantages = rl::advantages(g.rewards, 1e-8);
  return g;
}

double plain_grpo_loss(const rl::Group& g, double clip, double kl_coeff) {
  double loss = 0.0;
  for (size_t i = 0; i < g.rollouts.size(); ++i) {
    const rl::Rollout& r = g.rollouts[i];
    double a = g.advantages[i];
    for (size_t t = 0; t < r.traj.tokens.size(); ++t) {
      double rho = std::exp(r.logp_new[t] - r.logp_old[t]);
      double clipped = std::clamp(rho, 1.0 - clip, 1.0 + clip);
      loss -= std::min(rho * a, clipped * a);
      double delta = r.logp_ref[t] - r.logp_new[t];
      loss += kl_coeff * (std::exp(delta) - delta - 1.0);
    }
  }
  return loss;
}

bool grpo_reduction(std::string& why) {
  Rng rng(404);
  rl::GrpoConfig cfg;
  cfg.w_strategy = 1.0;
  cfg.w_modeling = 1.0;
  cfg.w_check = 1.0;
  cfg.w_other = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    rl::Group g = random_group(rng, 4 + (int)rng.uniform_int(0, 9));
    double ours = rl::sw_grpo_loss(g, cfg).loss;
    double plain = plain_grpo_loss(g, cfg.clip, cfg.kl_coeff);
    if (std::fabs(ours - plain) > 1e-12 * std::max(1.0, std::fabs(plain))) {
      why = "trial " + std::to_string(trial) + ": weighted " + fmt(ours) +
            " vs plain " + fmt(plain);
      return false;
    }
  }
  return true;
}

// --- criterion 5: analytic gradients against central differences ---

rl::StructuredChoicePolicy transportation_policy() {
  rl::StructuredChoicePolicy policy;
  policy.add_prompt(rl::schema_for_family(
      *synth::find_family("transportation"), "transportation_base"));
  return policy;
}

bool gradient_checks(std::string& why) {
  Rng rng(2029);
  synth::ReferenceGenerator gen;
  const auto& p = problem("transportation_base");
  auto cands = synth::propose_strategies(p, 3, gen);
  std::vector<synth::TrainingSample> pool;
  for (const auto& c : cands) pool.push_back(synth::realize(p, c, gen));

  double worst = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    auto policy = transportation_policy();
    auto params = policy.parameters();
    for (auto& v : params) v = 0.8 * (rng.uniform01() - 0.5);
    policy.set_parameters(params);
    std::vector<synth::TrainingSample> corpus;
    long n = rng.uniform_int(3, 9);
    for (long k = 0; k < n; ++k)
      corpus.push_back(pool[(size_t)rng.uniform_int(0, (long)pool.size())]);
    auto fn = [&] {
      rl::LossGrad lg = rl::sft_loss(policy, corpus);
      return std::make_pair(lg.loss, lg.grad);
    };
    worst = std::max(worst, rl::grad_check(policy, fn, 1e-6));
  }

  rl::GrpoConfig cfg;
  for (int trial = 0; trial < 25; ++trial) {
    auto policy = transportation_policy();
    auto params = policy.parameters();
    for (auto& v : params) v = 0.6 * (rng.uniform01() - 0.5);
    policy.set_parameters(params);
    rl::Group g =
        rl::sample_group(policy, "transportation_base", 6, rng);
    g.rewards.clear();
    for (size_t i = 0; i < g.rollouts.size(); ++i)
      g.rewards.push_back(3.0 * rng.uniform01());
    g.advantages = rl::advantages(g.rewards, cfg.adv_epsilon);
    for (auto& v : params) v += 0.4 * (rng.uniform01() - 0.5);
    policy.set_parameters(params);
    auto fn = [&] {
      rl::LossGrad lg = rl::sw_grpo_loss(g, cfg, policy);
      return std::make_pair(lg.loss, lg.grad);
    };
    worst = std::max(worst, rl::grad_check(policy, fn, 1e-6));
  }

  if (worst >= 1e-5) {
    why = "max relative gradient error " + fmt(worst);
    return false;
  }
  why = "max relative gradient error " + fmt(worst);
  return true;
}

// --- criterion 6: strategy learning and gradient scaling ---

bool strategy_learning(std::string& why) {
  synth::FamilySpec bandit = *synth::find_family("transportation");
  bandit.strategies = {bandit.strategies[0], bandit.strategies[1]};
  rl::StructuredChoicePolicy policy;
  policy.add_prompt(rl::schema_for_family(bandit, "transportation_base"));

  std::vector<synth::ProblemInstance> problems = {
      problem("transportation_base")};
  solver::SolveConfig scfg;
  reward::RewardConfig rcfg;
  rl::GrpoConfig cfg;
  Rng rng(7);
  rl::TrainLog log =
      rl::train_grpo(policy, problems, scfg, rcfg, cfg, 500, rng);

  int reached = -1;
  for (const auto& step : log.steps) {
    auto it = step.p_strategy.find("transportation_base:link-restricted-flow");
    if (it != step.p_strategy.end() && it->second > 0.9) {
      reached = step.step;
      break;
    }
  }
  if (reached < 0) {
    double final_p = log.steps.back().p_strategy.at(
        "transportation_base:link-restricted-flow");
    why = "P(working strategy) never exceeded 0.9; final " + fmt(final_p);
    return false;
  }

  auto first_step_strategy_norm = [&](double w_strategy) {
    auto pol = transportation_policy();
    rl::GrpoConfig c;
    c.w_strategy = w_strategy;
    Rng r(19);
    rl::TrainLog l = rl::train_grpo(pol, problems, scfg, rcfg, c, 1, r);
    return l.steps.front().grad_norm.at("strategy");
  };
  double unit = first_step_strategy_norm(1.0);
  double doubled = first_step_strategy_norm(2.0);
  if (std::fabs(doubled - 2.0 * unit) > 1e-12 * std::max(1.0, 2.0 * unit)) {
    why = "strategy gradient " + fmt(unit) + " scaled to " + fmt(doubled) +
          ", want exact doubling";
    return false;
  }
  why = "P > 0.9 at step " + std::to_string(reached);
  return true;
}

// --- criterion 7: corpus synthesis soundness ---

bool synthesis_soundness(std::string& why) {
  auto dir = fs::temp_directory_path() / "sageforge_acceptance";
  fs::create_directories(dir);
  auto corpus = (dir / "corpus.jsonl").string();

  synth::ReferenceGenerator gen;
  synth::build_corpus(catalog(), 3, gen, {}, {}, corpus, {});
  auto records = synth::load_corpus(corpus);
  if (records.empty()) {
    why = "corpus came back empty";
    return false;
  }
  std::vector<synth::TrainingSample> samples;
  for (const auto& r : records) {
    synth::TrainingSample s;
    s.problem_id = r.problem_id;
    s.strategy_id = r.strategy_id;
    s.strategy_name = r.strategy_name;
    s.reasoning = r.reasoning;
    s.model_source = r.model;
    samples.push_back(std::move(s));
  }
  auto outcome = synth::verify_filter(samples, catalog(), {}, {});
  if (!outcome.discarded.empty() ||
      outcome.kept.size() != records.size()) {
    why = std::to_string(outcome.discarded.size()) + " of " +
          std::to_string(records.size()) + " stored samples failed";
    return false;
  }

  const auto& p = problem("transportation_base");
  auto cands = synth::propose_strategies(p, 3, gen);
  std::optional<synth::TrainingSample> dense;
  for (const auto& c : cands)
    if (c.name == "dense-pairs") dense = synth::realize(p, c, gen);
  if (!dense) {
    why = "dense-pairs was not proposed";
    return false;
  }
  auto vf = synth::verify_filter({*dense}, catalog(), {}, {});
  if (vf.discarded.size() != 1 ||
      vf.discarded.front().second != synth::DiscardReason::ExecutionFailure) {
    why = "dense-pairs was not discarded as an execution failure";
    return false;
  }

  std::optional<synth::TrainingSample> kept_flow;
  for (const auto& s : outcome.kept)
    if (s.problem_id == "transportation_base" &&
        s.strategy_name == "link-restricted-flow")
      kept_flow = s;
  if (!kept_flow) {
    why = "no verified link-restricted-flow sample to duplicate";
    return false;
  }
  synth::TrainingSample renamed = *kept_flow;
  renamed.strategy_id = 9;
  renamed.strategy_name = "renamed-flow";
  auto merged = synth::dedup({*kept_flow, renamed});
  if (merged.size() != 1) {
    why = "renamed duplicate survived dedup (" +
          std::to_string(merged.size()) + " samples)";
    return false;
  }
  return true;
}

// --- criterion 8: scaled instance grid ---

bool scaling_grid(std::string& why) {
  for (const auto& base : catalog()) {
    for (int s = 1; s <= 8; ++s) {
      for (int r = 0; r < 5; ++r) {
        std::uint64_t seed = scalebench::derive_seed(base.family, s, r);
        synth::ProblemInstance inst;
        try {
          inst = scalebench::scale_generic(base, s, seed);
        } catch (const std::exception& e) {
          why = base.family + " x" + std::to_string(s) + " r" +
                std::to_string(r) + ": " + e.what();
          return false;
        }

        model::FlatModel flat =
            model::ground(model::parse_model(
                              synth::find_family(base.family)
                                  ->strategies
                                  .at((size_t)synth::find_family(base.family)
                                          ->reference_index)
                                  .model_template),
                          inst.data);
        auto rep = solver::solve(flat);
        if (rep.status != solver::SolveStatus::Optimal) {
          why = base.family + " x" + std::to_string(s) + " r" +
                std::to_string(r) + " is not optimal";
          return false;
        }

        if (base.family == "transportation") {
          double supply = 0.0, demand = 0.0;
          for (const auto& [k, v] : inst.data.params.at("Supply"))
            supply += v;
          for (const auto& [k, v] : inst.data.params.at("Demand"))
            demand += v;
          if (supply != demand) {
            why = "transportation x" + std::to_string(s) + " r" +
                  std::to_string(r) + " unbalanced: " + fmt(supply) +
                  " vs " + fmt(demand);
            return false;
          }
          if (s == 8 && model::struct_stats(flat).num_vars != 256) {
            why = "transportation x8 has " +
                  std::to_string(model::struct_stats(flat).num_vars) +
                  " variables, want 256";
            return false;
          }
        }

        auto again = scalebench::scale_generic(base, s, seed);
        if (model::data_to_json(again.data) !=
                model::data_to_json(inst.data) ||
            again.id != inst.id) {
          why = base.family + " x" + std::to_string(s) + " r" +
                std::to_string(r) + " regeneration differs";
          return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 9: structural efficiency ordering ---

bool efficiency_ordering(std::string& why) {
  std::vector<scalebench::FormulationSource> sources = {
      {"compact", "aircraft_assignment", "compact-integer"},
      {"redundant", "aircraft_assignment", "redundant-integer"},
  };
  std::vector<int> scales = {1, 2, 3, 4, 5, 6, 7, 8};
  auto records = scalebench::bench_efficiency(sources, scales, 5, {}, {});

  std::map<std::string, const scalebench::BenchRecord*> by_key;
  for (const auto& r : records)
    by_key[r.label + "/" + std::to_string(r.scale) + "/" +
           std::to_string(r.replicate)] = &r;

  long compact_iters_x8 = 0, redundant_iters_x8 = 0;
  for (int s : scales) {
    for (int r = 0; r < 5; ++r) {
      auto suffix = "/" + std::to_string(s) + "/" + std::to_string(r);
      const auto* c = by_key.at("compact" + suffix);
      const auto* d = by_key.at("redundant" + suffix);
      if (c->status != "optimal" || d->status != "optimal") {
        why = "non-optimal record at scale " + std::to_string(s);
        return false;
      }
      if (d->num_constraints <= c->num_constraints || d->nnz <= c->nnz) {
        why = "x" + std::to_string(s) + " r" + std::to_string(r) +
              ": constraints " + std::to_string(d->num_constraints) +
              " vs " + std::to_string(c->num_constraints) + ", nnz " +
              std::to_string(d->nnz) + " vs " + std::to_string(c->nnz);
        return false;
      }
      if (s == 8) {
        compact_iters_x8 += c->iterations;
        redundant_iters_x8 += d->iterations;
      }
    }
  }
  if (redundant_iters_x8 <= compact_iters_x8) {
    why = "summed x8 iterations: redundant " +
          std::to_string(redundant_iters_x8) + " vs compact " +
          std::to_string(compact_iters_x8) + " (not strictly greater)";
    return false;
  }
  return true;
}

// --- criterion 10: diversity and pass@K ---

bool diversity_metrics(std::string& why) {
  synth::ReferenceGenerator gen;
  const auto& p = problem("project_assignment_base");
  auto cands = synth::propose_strategies(p, 2, gen);
  std::map<std::string, std::vector<scalebench::Generation>> gens;
  for (const auto& name : {"continuous-flow", "unit-time-binary"}) {
    bool found = false;
    for (const auto& c : cands) {
      if (c.name != name) continue;
      auto sample = synth::realize(p, c, gen);
      scalebench::Generation g;
      g.correct = true;
      g.flat = model::ground(model::parse_model(sample.model_source),
                             p.data);
      gens[p.id].push_back(std::move(g));
      found = true;
    }
    if (!found) {
      why = std::string("strategy ") + name + " was not proposed";
      return false;
    }
  }

  auto wide = scalebench::diversity(gens, 16);
  if (wide.distinct_by_problem.at(p.id) != 2 || wide.average != 2.0) {
    why = "distinct forms at K=16: " +
          std::to_string(wide.distinct_by_problem.at(p.id)) + ", average " +
          fmt(wide.average);
    return false;
  }
  auto narrow = scalebench::diversity(gens, 1);
  if (narrow.average != 1.0) {
    why = "average at K=1 is " + fmt(narrow.average);
    return false;
  }

  Rng rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<bool>> flags;
    for (int i = 0; i < 30; ++i) {
      std::vector<bool> row;
      for (int k = 0; k < 16; ++k) row.push_back(rng.uniform01() < 0.3);
      flags.push_back(std::move(row));
    }
    double prev = scalebench::pass_at_k(flags, 1);
    for (int k = 2; k <= 16; ++k) {
      double cur = scalebench::pass_at_k(flags, k);
      if (cur < prev) {
        why = "pass@" + std::to_string(k) + " = " + fmt(cur) +
              " dropped below pass@" + std::to_string(k - 1) + " = " +
              fmt(prev);
        return false;
      }
      prev = cur;
    }
  }
  return true;
}

// --- criterion 11: file format round trips ---

bool round_trips(std::string& why) {
  for (const auto& p : catalog()) {
    const auto* spec = synth::find_family(p.family);
    for (const auto& s : spec->strategies) {
      model::FlatModel flat;
      try {
        flat = model::ground(model::parse_model(s.model_template), p.data);
      } catch (const std::exception&) {
        continue;  // formulations that cannot ground have no LP form
      }
      auto back = model::import_lp(model::export_lp(flat));
      auto a = model::canonicalize(flat).digest;
      auto b = model::canonicalize(back).digest;
      if (a != b) {
        why = p.family + "/" + s.name + " digest " + a + " became " + b;
        return false;
      }
    }
  }

  auto dir = fs::temp_directory_path() / "sageforge_acceptance";
  fs::create_directories(dir);
  auto corpus = (dir / "roundtrip.jsonl").string();
  synth::ReferenceGenerator gen;
  synth::build_corpus(catalog(), 3, gen, {}, {}, corpus, {});
  auto records = synth::load_corpus(corpus);
  std::vector<synth::TrainingSample> samples;
  for (const auto& r : records) {
    synth::TrainingSample s;
    s.problem_id = r.problem_id;
    s.strategy_id = r.strategy_id;
    s.strategy_name = r.strategy_name;
    s.reasoning = r.reasoning;
    s.model_source = r.model;
    samples.push_back(std::move(s));
  }
  auto outcome = synth::verify_filter(samples, catalog(), {}, {});
  if (!outcome.discarded.empty() ||
      outcome.kept.size() != records.size()) {
    why = "reloaded corpus lost " +
          std::to_string(outcome.discarded.size()) + " samples";
    return false;
  }
  return true;
}

struct Criterion {
  int number;
  const char* label;
  double limit_seconds;
  std::function<bool(std::string&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "format and outcome rewards across all segment counts and tiers",
       1.0, reward_table},
      {2, "efficiency reward matches a high-precision curve oracle", 1.0,
       efficiency_curve},
      {3, "base-catalog optima match hand values and enumeration oracles",
       10.0, solver_oracles},
      {4, "unit segment weights reduce to the plain group objective", 5.0,
       grpo_reduction},
      {5, "loss gradients match central finite differences", 30.0,
       gradient_checks},
      {6, "training concentrates on the working strategy; weight scaling "
          "is exact",
       120.0, strategy_learning},
      {7, "synthesized corpus re-verifies; bad strategy discarded; "
          "duplicate merged",
       30.0, synthesis_soundness},
      {8, "scaled instances all solve, balance, and regenerate identically",
       300.0, scaling_grid},
      {9, "row-padded formulation costs more structure and more pivots",
       120.0, efficiency_ordering},
      {10, "diversity counts distinct correct forms; pass@K is monotone",
       10.0, diversity_metrics},
      {11, "LP text and corpus files round-trip losslessly", 10.0,
       round_trips},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string why;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn(why);
    } catch (const std::exception& e) {
      ok = false;
      why = std::string("unhandled error: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (elapsed > c.limit_seconds) {
      ok = false;
      if (!why.empty()) why += "; ";
      why += "over time budget";
    }
    std::printf("%s %2d [%6.2fs/%gs] %s%s%s\n", ok ? "PASS" : "FAIL",
                c.number, elapsed, c.limit_seconds, c.label,
                why.empty() ? "" : " -- ", why.c_str());
    if (!ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", (int)criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
