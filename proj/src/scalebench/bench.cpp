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

#include "sageforge/scalebench/scalebench.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "sageforge/model/ast.hpp"
#include "sageforge/model/canonical.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/util/numfmt.hpp"

namespace sageforge::scalebench {

namespace {

const char* status_name(solver::SolveStatus s) {
  switch (s) {
    case solver::SolveStatus::Optimal: return "optimal";
    case solver::SolveStatus::Infeasible: return "infeasible";
    case solver::SolveStatus::Unbounded: return "unbounded";
    case solver::SolveStatus::LimitReached: return "limit";
    case solver::SolveStatus::Error: return "error";
  }
  return "error";
}

const synth::StrategySpec& strategy_or_throw(const std::string& family,
                                             const std::string& strategy) {
  const auto* spec = synth::find_family(family);
  if (!spec) throw std::invalid_argument("unknown family: " + family);
  for (const auto& s : spec->strategies)
    if (s.name == strategy) return s;
  throw std::invalid_argument("unknown strategy " + strategy +
                              " in family " + family);
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

std::vector<BenchRecord> bench_efficiency(
    const std::vector<FormulationSource>& sources,
    const std::vector<int>& scales, int replicates,
    const solver::SolveConfig& solver_cfg,
    const reward::RewardConfig& reward_cfg, const ScaleConfig& scale_cfg) {
  if (replicates < 1)
    throw std::invalid_argument("replicates must be >= 1");
  for (const auto& src : sources)
    strategy_or_throw(src.family, src.strategy);

  // Scaled instances are shared by every label of the same family; a cell
  // whose generation fails is remembered as absent.
  std::map<std::string, std::optional<synth::ProblemInstance>> instances;
  auto instance_for = [&](const std::string& family, int s, int r)
      -> const std::optional<synth::ProblemInstance>& {
    std::string key =
        family + ":" + std::to_string(s) + ":" + std::to_string(r);
    auto it = instances.find(key);
    if (it != instances.end()) return it->second;
    std::optional<synth::ProblemInstance> made;
    try {
      auto base = synth::ProblemInstance{};
      const auto* spec = synth::find_family(family);
      base.id = family + "_base";
      base.question = spec->question;
      base.data = synth::base_data(family);
      base.problem_class = spec->problem_class;
      base.family = family;
      made = scale_generic(base, s, derive_seed(family, s, r), scale_cfg);
    } catch (const InfeasibleGenerated&) {
      made.reset();
    }
    return instances.emplace(std::move(key), std::move(made)).first->second;
  };

  std::vector<BenchRecord> records;
  for (const auto& src : sources) {
    const auto& strat = strategy_or_throw(src.family, src.strategy);
    auto tpl = model::parse_model(strat.model_template);
    for (int s : scales) {
      for (int r = 0; r < replicates; ++r) {
        BenchRecord rec;
        rec.label = src.label;
        rec.family = src.family;
        rec.scale = s;
        rec.replicate = r;
        rec.status = "error";
        const auto& inst = instance_for(src.family, s, r);
        if (!inst) {
          records.push_back(std::move(rec));
          continue;
        }
        model::FlatModel flat;
        try {
          flat = model::ground(tpl, inst->data);
        } catch (const model::GroundError&) {
          records.push_back(std::move(rec));
          continue;
        }
        auto stats = model::struct_stats(flat);
        rec.num_vars = stats.num_vars;
        rec.num_constraints = stats.num_constraints;
        rec.nnz = stats.nnz;
        auto report = solver::solve(flat, solver_cfg);
        rec.status = status_name(report.status);
        rec.iterations = report.iterations;
        rec.nodes = report.nodes;
        rec.gap = report.gap;
        rec.solve_time_s = report.solve_time_seconds;
        rec.correct =
            report.status == solver::SolveStatus::Optimal &&
            inst->ground_truth &&
            solver::check_answer(report, *inst->ground_truth,
                                 reward_cfg.check_abs_tol,
                                 reward_cfg.check_rel_tol) ==
                solver::AnswerVerdict::Match;
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<BenchSummary> out;
  std::map<std::string, std::size_t> index;
  for (const auto& rec : records) {
    std::string key =
        rec.label + "\n" + rec.family + "\n" + std::to_string(rec.scale);
    auto it = index.find(key);
    if (it == index.end()) {
      BenchSummary fresh;
      fresh.label = rec.label;
      fresh.family = rec.family;
      fresh.scale = rec.scale;
      it = index.emplace(std::move(key), out.size()).first;
      out.push_back(std::move(fresh));
    }
    if (!rec.correct) continue;
    auto& s = out[it->second];
    s.correct += 1;
    s.mean_iterations += (double)rec.iterations;
    s.mean_nodes += (double)rec.nodes;
    s.mean_solve_time_s += rec.solve_time_s;
    s.mean_num_vars += (double)rec.num_vars;
    s.mean_num_constraints += (double)rec.num_constraints;
    s.mean_nnz += (double)rec.nnz;
  }
  for (auto& s : out) {
    if (s.correct == 0) {
      s.empty = true;
      continue;
    }
    s.mean_iterations /= s.correct;
    s.mean_nodes /= s.correct;
    s.mean_solve_time_s /= s.correct;
    s.mean_num_vars /= s.correct;
    s.mean_num_constraints /= s.correct;
    s.mean_nnz /= s.correct;
  }
  return out;
}

std::string bench_csv_header() {
  return "label,family,scale,replicate,status,iterations,nodes,gap,"
         "num_vars,num_constraints,nnz,solve_time_s";
}

void write_bench_csv(const std::vector<BenchRecord>& records,
                     const std::string& path) {
  auto out = open_or_throw(path);
  out << bench_csv_header() << "\n";
  for (const auto& r : records) {
    out << r.label << "," << r.family << "," << r.scale << ","
        << r.replicate << "," << r.status << "," << r.iterations << ","
        << r.nodes << "," << format_shortest(r.gap) << "," << r.num_vars
        << "," << r.num_constraints << "," << r.nnz << ","
        << format_shortest(r.solve_time_s) << "\n";
  }
}

void write_bench_jsonl(const std::vector<BenchRecord>& records,
                       const std::string& path) {
  auto out = open_or_throw(path);
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["family"] = r.family;
    j["scale"] = r.scale;
    j["replicate"] = r.replicate;
    j["status"] = r.status;
    j["iterations"] = r.iterations;
    j["nodes"] = r.nodes;
    j["gap"] = r.gap;
    j["num_vars"] = r.num_vars;
    j["num_constraints"] = r.num_constraints;
    j["nnz"] = r.nnz;
    j["solve_time_s"] = r.solve_time_s;
    out << j.dump() << "\n";
  }
}

double pass_at_k(const std::vector<std::vector<bool>>& flags_per_problem,
                 int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (flags_per_problem.empty())
    throw std::invalid_argument("no problems given");
  int solved = 0;
  for (const auto& flags : flags_per_problem) {
    std::size_t window = std::min<std::size_t>(flags.size(), (std::size_t)k);
    for (std::size_t i = 0; i < window; ++i)
      if (flags[i]) {
        ++solved;
        break;
      }
  }
  return (double)solved / (double)flags_per_problem.size();
}

namespace {

bool finite(double v) {
  return v > -std::numeric_limits<double>::infinity() &&
         v < std::numeric_limits<double>::infinity();
}

std::string bound_class(const model::FlatVar& v) {
  bool lo = finite(v.lower), hi = finite(v.upper);
  if (lo && hi) return v.lower == v.upper ? "fixed" : "boxed";
  if (lo) return "lower";
  if (hi) return "upper";
  return "free";
}

std::string arity_class(std::size_t n) {
  if (n <= 1) return "1";
  if (n == 2) return "2";
  return "3+";
}

std::string count_class(std::size_t n) {
  if (n <= 1) return "1";
  if (n == 2) return "2";
  return "many";
}

}  // namespace

std::set<std::string> variable_type_signatures(const model::FlatModel& m) {
  std::set<int> in_objective;
  for (const auto& [idx, coef] : m.objective)
    if (coef != 0.0) in_objective.insert(idx);
  std::set<std::string> out;
  for (std::size_t i = 0; i < m.vars.size(); ++i) {
    const auto& v = m.vars[i];
    out.insert(std::string(model::to_string(v.domain)) + "/" +
               bound_class(v) + "/" +
               (in_objective.count((int)i) ? "obj" : "noobj"));
  }
  return out;
}

std::set<std::string> constraint_type_signatures(const model::FlatModel& m) {
  std::set<std::string> out;
  for (const auto& c : m.constraints) {
    bool uniform = true;
    for (const auto& [idx, coef] : c.coefs)
      if (coef != c.coefs.front().second) uniform = false;
    out.insert(std::string(model::to_string(c.sense)) + "/" +
               arity_class(c.coefs.size()) + "/" +
               (uniform ? "uniform" : "varied"));
  }
  return out;
}

std::string objective_type_signature(const model::FlatModel& m) {
  std::set<double> coefs;
  for (const auto& [idx, coef] : m.objective)
    if (coef != 0.0) coefs.insert(coef);
  return std::string(m.minimize ? "min" : "max") + "/" +
         count_class(coefs.size());
}

DiversityReport diversity(
    const std::map<std::string, std::vector<Generation>>& generations,
    int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  DiversityReport report;
  int with_correct = 0;
  double sum_distinct = 0.0, sum_var = 0.0, sum_con = 0.0, sum_obj = 0.0;
  for (const auto& [problem, gens] : generations) {
    std::set<std::string> digests;
    std::set<std::string> var_types, con_types, obj_types;
    std::size_t window = std::min<std::size_t>(gens.size(), (std::size_t)k);
    for (std::size_t i = 0; i < window; ++i) {
      if (!gens[i].correct) continue;
      digests.insert(model::canonicalize(gens[i].flat).digest);
      auto vt = variable_type_signatures(gens[i].flat);
      var_types.insert(vt.begin(), vt.end());
      auto ct = constraint_type_signatures(gens[i].flat);
      con_types.insert(ct.begin(), ct.end());
      obj_types.insert(objective_type_signature(gens[i].flat));
    }
    report.distinct_by_problem[problem] = (int)digests.size();
    sum_distinct += (double)digests.size();
    if (!digests.empty()) {
      ++with_correct;
      sum_var += (double)var_types.size();
      sum_con += (double)con_types.size();
      sum_obj += (double)obj_types.size();
    }
  }
  if (!generations.empty())
    report.average = sum_distinct / (double)generations.size();
  if (with_correct > 0) {
    report.avg_variable_types = sum_var / with_correct;
    report.avg_constraint_types = sum_con / with_correct;
    report.avg_objective_types = sum_obj / with_correct;
  }
  return report;
}

void write_diversity_jsonl(const DiversityReport& report,
                           const std::string& path) {
  auto out = open_or_throw(path);
  for (const auto& [problem, count] : report.distinct_by_problem) {
    nlohmann::ordered_json j;
    j["problem"] = problem;
    j["distinct_correct"] = count;
    out << j.dump() << "\n";
  }
  nlohmann::ordered_json j;
  j["average"] = report.average;
  j["avg_variable_types"] = report.avg_variable_types;
  j["avg_constraint_types"] = report.avg_constraint_types;
  j["avg_objective_types"] = report.avg_objective_types;
  out << j.dump() << "\n";
}

}  // namespace sageforge::scalebench
