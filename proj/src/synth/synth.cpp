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

#include "sageforge/synth/synth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "sageforge/model/ast.hpp"
#include "sageforge/model/canonical.hpp"
#include "sageforge/model/flat.hpp"
#include "sageforge/synth/catalog.hpp"

namespace sageforge::synth {

namespace {

using nlohmann::json;

const char* to_string(reward::ProblemClass c) {
  return c == reward::ProblemClass::MILP ? "MILP" : "LP";
}

reward::ProblemClass problem_class_from(const std::string& s) {
  if (s == "LP") return reward::ProblemClass::LP;
  if (s == "MILP") return reward::ProblemClass::MILP;
  throw SynthError(SynthError::Kind::UnknownFamily,
                   "unknown problem class: " + s);
}

}  // namespace

const char* to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::ExecutionFailure: return "execution_failure";
    case DiscardReason::Infeasible: return "infeasible";
    case DiscardReason::Unbounded: return "unbounded";
    case DiscardReason::WrongAnswer: return "wrong_answer";
  }
  return "?";
}

std::string render_response(const TrainingSample& sample) {
  std::string out = sample.reasoning;
  out += "\n```\n";
  out += sample.model_source;
  if (!sample.model_source.empty() && sample.model_source.back() != '\n')
    out += '\n';
  out += "```\n";
  return out;
}

std::vector<StrategyCandidate> ReferenceGenerator::propose(
    const ProblemInstance& p, int k) {
  const FamilySpec* spec = find_family(p.family);
  if (!spec)
    throw SynthError(SynthError::Kind::UnknownFamily,
                     "unknown family: " + p.family);
  std::vector<StrategyCandidate> out;
  int n = std::min<int>(k, (int)spec->strategies.size());
  for (int i = 0; i < n; ++i) {
    const StrategySpec& s = spec->strategies[i];
    out.push_back({i + 1, s.name, s.description, spec->family + "/" + s.name});
  }
  return out;
}

std::pair<std::string, std::string> ReferenceGenerator::realize(
    const ProblemInstance& p, const StrategyCandidate& s) {
  (void)p;
  size_t slash = s.realization_key.find('/');
  const FamilySpec* spec =
      slash == std::string::npos
          ? nullptr
          : find_family(s.realization_key.substr(0, slash));
  if (!spec)
    throw SynthError(SynthError::Kind::UnknownFamily,
                     "unrealizable key: " + s.realization_key);
  std::string name = s.realization_key.substr(slash + 1);
  for (const auto& strat : spec->strategies) {
    if (strat.name != name) continue;
    std::string reasoning = "<think>\n<strategy>" + strat.name + ": " +
                            strat.description + "</strategy>\n<modeling>" +
                            strat.modeling_note + "</modeling>\n<check>" +
                            strat.check_note + "</check>\n</think>";
    return {reasoning, strat.model_template};
  }
  throw SynthError(SynthError::Kind::UnknownFamily,
                   "unrealizable key: " + s.realization_key);
}

std::vector<StrategyCandidate> propose_strategies(const ProblemInstance& p,
                                                  int k, Generator& gen) {
  return gen.propose(p, k);
}

TrainingSample realize(const ProblemInstance& p, const StrategyCandidate& s,
                       Generator& gen) {
  auto [reasoning, source] = gen.realize(p, s);
  TrainingSample t;
  t.problem_id = p.id;
  t.strategy_id = s.id;
  t.strategy_name = s.name;
  t.reasoning = std::move(reasoning);
  t.model_source = std::move(source);
  return t;
}

VerifyOutcome verify_filter(const std::vector<TrainingSample>& samples,
                            const std::vector<ProblemInstance>& problems,
                            const solver::SolveConfig& solver_cfg,
                            const reward::RewardConfig& reward_cfg) {
  std::map<std::string, const ProblemInstance*> by_id;
  for (const auto& p : problems) by_id.emplace(p.id, &p);

  VerifyOutcome out;
  for (const auto& sample : samples) {
    auto it = by_id.find(sample.problem_id);
    if (it == by_id.end()) {
      out.discarded.push_back({sample, DiscardReason::ExecutionFailure});
      continue;
    }
    const ProblemInstance& p = *it->second;

    TrainingSample checked = sample;
    model::FlatModel flat;
    try {
      flat = model::ground(model::parse_model(sample.model_source), p.data);
    } catch (const model::ParseError&) {
      out.discarded.push_back({sample, DiscardReason::ExecutionFailure});
      continue;
    } catch (const model::GroundError&) {
      out.discarded.push_back({sample, DiscardReason::ExecutionFailure});
      continue;
    }
    checked.canonical = model::canonicalize(flat).digest;

    solver::SolveReport rep = solver::solve(flat, solver_cfg);
    switch (rep.status) {
      case solver::SolveStatus::Infeasible:
        out.discarded.push_back({checked, DiscardReason::Infeasible});
        continue;
      case solver::SolveStatus::Unbounded:
        out.discarded.push_back({checked, DiscardReason::Unbounded});
        continue;
      case solver::SolveStatus::LimitReached:
      case solver::SolveStatus::Error:
        out.discarded.push_back({checked, DiscardReason::ExecutionFailure});
        continue;
      case solver::SolveStatus::Optimal:
        break;
    }
    if (p.ground_truth &&
        solver::check_answer(rep, *p.ground_truth, reward_cfg.check_abs_tol,
                             reward_cfg.check_rel_tol) !=
            solver::AnswerVerdict::Match) {
      out.discarded.push_back({checked, DiscardReason::WrongAnswer});
      continue;
    }
    checked.verified = true;
    out.kept.push_back(std::move(checked));
  }
  return out;
}

std::vector<TrainingSample> dedup(const std::vector<TrainingSample>& samples,
                                  const JudgeHook& judge) {
  std::vector<TrainingSample> sorted = samples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TrainingSample& a, const TrainingSample& b) {
                     return std::tie(a.problem_id, a.strategy_id) <
                            std::tie(b.problem_id, b.strategy_id);
                   });
  std::vector<TrainingSample> kept;
  for (const auto& s : sorted) {
    bool merged = false;
    for (const auto& k : kept) {
      if (k.problem_id != s.problem_id) continue;
      bool same_digest = !k.canonical.empty() && k.canonical == s.canonical;
      if (same_digest || (judge && judge(k, s))) {
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(s);
  }
  return kept;
}

CorpusManifest build_corpus(const std::vector<ProblemInstance>& problems,
                            int k, Generator& gen,
                            const solver::SolveConfig& solver_cfg,
                            const reward::RewardConfig& reward_cfg,
                            const std::string& corpus_path,
                            const std::string& manifest_path) {
  CorpusManifest manifest;
  std::map<std::string, size_t> report_index;
  std::vector<TrainingSample> all;

  for (const auto& p : problems) {
    ProblemReport report;
    report.problem_id = p.id;
    auto candidates = gen.propose(p, k);
    report.proposed = (int)candidates.size();
    for (const auto& c : candidates) all.push_back(realize(p, c, gen));
    report_index[p.id] = manifest.problems.size();
    manifest.problems.push_back(std::move(report));
  }

  VerifyOutcome vo = verify_filter(all, problems, solver_cfg, reward_cfg);
  for (const auto& [sample, reason] : vo.discarded) {
    auto it = report_index.find(sample.problem_id);
    if (it == report_index.end()) continue;
    ProblemReport& r = manifest.problems[it->second];
    switch (reason) {
      case DiscardReason::ExecutionFailure: ++r.exec_failures; break;
      case DiscardReason::Infeasible: ++r.infeasible; break;
      case DiscardReason::Unbounded: ++r.unbounded; break;
      case DiscardReason::WrongAnswer: ++r.wrong_answer; break;
    }
    ++manifest.total_discarded;
  }

  std::map<std::string, int> kept_before;
  for (const auto& s : vo.kept) ++kept_before[s.problem_id];

  std::vector<TrainingSample> final_samples = dedup(vo.kept);

  std::ofstream corpus(corpus_path);
  if (!corpus)
    throw std::runtime_error("cannot write corpus file: " + corpus_path);
  std::map<std::string, const ProblemInstance*> by_id;
  for (const auto& p : problems) by_id.emplace(p.id, &p);

  for (const auto& s : final_samples) {
    auto it = report_index.find(s.problem_id);
    if (it != report_index.end())
      manifest.problems[it->second].kept_ids.push_back(s.strategy_id);
    ++manifest.total_kept;

    json j;
    j["id"] = s.problem_id + "/s" + std::to_string(s.strategy_id);
    j["problem_id"] = s.problem_id;
    j["strategy_id"] = s.strategy_id;
    j["strategy_name"] = s.strategy_name;
    j["reasoning"] = s.reasoning;
    j["model"] = s.model_source;
    auto pit = by_id.find(s.problem_id);
    if (pit != by_id.end() && pit->second->ground_truth)
      j["ground_truth"] = *pit->second->ground_truth;
    else
      j["ground_truth"] = nullptr;
    j["canonical"] = s.canonical;
    corpus << j.dump() << "\n";
  }

  for (auto& r : manifest.problems) {
    r.dedup_merged = kept_before[r.problem_id] - (int)r.kept_ids.size();
    manifest.total_dedup_merged += r.dedup_merged;
  }

  if (!manifest_path.empty()) {
    json mj;
    mj["problems"] = json::array();
    for (const auto& r : manifest.problems) {
      json pj;
      pj["problem_id"] = r.problem_id;
      pj["proposed"] = r.proposed;
      pj["kept_ids"] = r.kept_ids;
      pj["exec_failures"] = r.exec_failures;
      pj["infeasible"] = r.infeasible;
      pj["unbounded"] = r.unbounded;
      pj["wrong_answer"] = r.wrong_answer;
      pj["dedup_merged"] = r.dedup_merged;
      mj["problems"].push_back(std::move(pj));
    }
    mj["total_kept"] = manifest.total_kept;
    mj["total_discarded"] = manifest.total_discarded;
    mj["total_dedup_merged"] = manifest.total_dedup_merged;
    std::ofstream mf(manifest_path);
    if (!mf)
      throw std::runtime_error("cannot write manifest file: " + manifest_path);
    mf << mj.dump(2) << "\n";
  }
  return manifest;
}

std::vector<CorpusRecord> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<CorpusRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line);
    CorpusRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.problem_id = j.at("problem_id").get<std::string>();
    rec.strategy_id = j.at("strategy_id").get<int>();
    rec.strategy_name = j.at("strategy_name").get<std::string>();
    rec.reasoning = j.at("reasoning").get<std::string>();
    rec.model = j.at("model").get<std::string>();
    if (!j.at("ground_truth").is_null())
      rec.ground_truth = j.at("ground_truth").get<double>();
    rec.canonical = j.at("canonical").get<std::string>();
    out.push_back(std::move(rec));
  }
  return out;
}

std::string catalog_to_json(const std::vector<ProblemInstance>& problems) {
  json arr = json::array();
  for (const auto& p : problems) {
    json j;
    j["id"] = p.id;
    j["question"] = p.question;
    j["family"] = p.family;
    j["problem_class"] = to_string(p.problem_class);
    if (p.ground_truth)
      j["ground_truth"] = *p.ground_truth;
    else
      j["ground_truth"] = nullptr;
    j["data"] = json::parse(model::data_to_json(p.data));
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<ProblemInstance> catalog_from_json(const std::string& json_text) {
  json arr = json::parse(json_text);
  std::vector<ProblemInstance> out;
  for (const auto& j : arr) {
    ProblemInstance p;
    p.id = j.at("id").get<std::string>();
    p.question = j.at("question").get<std::string>();
    p.family = j.at("family").get<std::string>();
    p.problem_class = problem_class_from(j.at("problem_class"));
    if (!j.at("ground_truth").is_null())
      p.ground_truth = j.at("ground_truth").get<double>();
    p.data = model::data_from_json(j.at("data").dump());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace sageforge::synth
