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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sageforge/cli/cli.hpp"
#include "sageforge/model/ast.hpp"
#include "sageforge/model/lpfile.hpp"
#include "sageforge/scalebench/scalebench.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/util/numfmt.hpp"

namespace sageforge::cli {

namespace {

/// A problem the user can fix: bad flag values, unreadable or malformed
/// inputs, unknown ids. Reported on stderr with exit code 1.
struct UserError : std::runtime_error {
  explicit UserError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ensure_writable(const std::string& path) {
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw UserError("cannot write " + path);
}

std::vector<synth::ProblemInstance> load_catalog(const GlobalConfig& cfg) {
  if (cfg.catalog_path.empty()) return synth::builtin_catalog();
  try {
    return synth::catalog_from_json(read_file(cfg.catalog_path));
  } catch (const UserError&) {
    throw;
  } catch (const std::exception& e) {
    throw UserError("bad catalog file " + cfg.catalog_path + ": " +
                    e.what());
  }
}

const synth::ProblemInstance& find_problem(
    const std::vector<synth::ProblemInstance>& problems,
    const std::string& id) {
  for (const auto& p : problems)
    if (p.id == id) return p;
  throw UserError("problem not found: " + id);
}

rl::StructuredChoicePolicy make_policy(
    const std::vector<synth::ProblemInstance>& problems) {
  rl::StructuredChoicePolicy policy;
  for (const auto& p : problems) {
    const auto* spec = synth::find_family(p.family);
    if (!spec) throw UserError("problem " + p.id + " has unknown family " +
                               p.family);
    policy.add_prompt(rl::schema_for_family(*spec, p.id));
  }
  return policy;
}

model::FlatModel ground_user_model(const std::string& model_text,
                                   const model::DataBinding& data) {
  model::ModelTemplate tpl;
  try {
    tpl = model::parse_model(model_text);
  } catch (const std::exception& e) {
    throw UserError(std::string("model does not parse: ") + e.what());
  }
  try {
    return model::ground(tpl, data);
  } catch (const std::exception& e) {
    throw UserError(std::string("model does not ground: ") + e.what());
  }
}

model::DataBinding resolve_data(const GlobalConfig& cfg,
                                const std::string& problem_id,
                                const std::string& data_path) {
  if (problem_id.empty() == data_path.empty())
    throw UserError("give exactly one of --problem or --data");
  if (!problem_id.empty())
    return find_problem(load_catalog(cfg), problem_id).data;
  try {
    return model::data_from_json(read_file(data_path));
  } catch (const UserError&) {
    throw;
  } catch (const std::exception& e) {
    throw UserError("bad data file " + data_path + ": " + e.what());
  }
}

std::string show(double v) { return format_shortest(v); }

int cmd_synth(const GlobalConfig& cfg, int k, const std::string& corpus,
              const std::string& manifest) {
  auto problems = load_catalog(cfg);
  auto gen = synth::make_generator(cfg.generator);
  ensure_writable(corpus);
  if (!manifest.empty()) ensure_writable(manifest);
  auto result = synth::build_corpus(problems, k, *gen, cfg.solver,
                                    cfg.reward, corpus, manifest);
  std::cout << "proposed strategies for " << result.problems.size()
            << " problems (k=" << k << "): kept " << result.total_kept
            << ", discarded " << result.total_discarded << ", merged "
            << result.total_dedup_merged << "\n";
  std::cout << "corpus written to " << corpus << "\n";
  if (!manifest.empty())
    std::cout << "manifest written to " << manifest << "\n";
  return 0;
}

int cmd_verify(const GlobalConfig& cfg, const std::string& corpus) {
  std::vector<synth::CorpusRecord> records;
  try {
    records = synth::load_corpus(corpus);
  } catch (const std::exception& e) {
    throw UserError(std::string("cannot load corpus: ") + e.what());
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
  auto problems = load_catalog(cfg);
  auto outcome = synth::verify_filter(samples, problems, cfg.solver,
                                      cfg.reward);
  std::cout << "re-verified " << outcome.kept.size() << " of "
            << samples.size() << " samples\n";
  if (outcome.discarded.empty()) return 0;
  for (const auto& [sample, reason] : outcome.discarded)
    std::cout << "  failed: " << sample.problem_id << "/s"
              << sample.strategy_id << " (" << synth::to_string(reason)
              << ")\n";
  std::cerr << "error: " << outcome.discarded.size()
            << " corpus samples failed re-verification\n";
  return 1;
}

int cmd_reward(const GlobalConfig& cfg, const std::string& problem_id,
               const std::string& response_path, const std::string& out) {
  auto problems = load_catalog(cfg);
  const auto& p = find_problem(problems, problem_id);
  auto text = read_file(response_path);
  reward::ScoringInstance inst{p.data, p.ground_truth, p.problem_class};
  auto b = reward::composite_reward(text, inst, cfg.solver, cfg.reward);
  std::cout << "segments: " << b.n_seg << "\n";
  std::cout << "format reward: " << show(b.r_format) << "\n";
  std::cout << "outcome: " << reward::to_string(b.outcome_kind) << " -> "
            << show(b.r_outcome) << "\n";
  std::cout << "efficiency reward: " << show(b.r_efficiency);
  if (b.m) std::cout << " (metric " << show(*b.m) << ")";
  std::cout << "\n";
  std::cout << "total reward: " << show(b.total) << "\n";
  if (!out.empty()) {
    ensure_writable(out);
    nlohmann::ordered_json j;
    j["n_seg"] = b.n_seg;
    j["r_format"] = b.r_format;
    j["r_outcome"] = b.r_outcome;
    j["r_efficiency"] = b.r_efficiency;
    j["total"] = b.total;
    j["outcome"] = reward::to_string(b.outcome_kind);
    if (b.m) j["m"] = *b.m;
    std::ofstream(out) << j.dump() << "\n";
  }
  return 0;
}

int cmd_train_sft(const GlobalConfig& cfg, const std::string& corpus,
                  int steps, double lr, const std::string& out) {
  if (steps < 1) throw UserError("--steps must be >= 1");
  std::vector<synth::CorpusRecord> records;
  try {
    records = synth::load_corpus(corpus);
  } catch (const std::exception& e) {
    throw UserError(std::string("cannot load corpus: ") + e.what());
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
  auto problems = load_catalog(cfg);
  auto policy = make_policy(problems);
  ensure_writable(out);
  std::ofstream log(out);
  double last = 0.0;
  for (int step = 1; step <= steps; ++step) {
    rl::LossGrad lg;
    try {
      lg = rl::sft_loss(policy, samples);
    } catch (const rl::UnrenderableSample& e) {
      throw UserError(std::string("corpus sample does not fit the policy: ")
                      + e.what());
    }
    auto params = policy.parameters();
    for (std::size_t i = 0; i < params.size(); ++i)
      params[i] -= lr * lg.grad[i];
    policy.set_parameters(params);
    nlohmann::ordered_json j;
    j["step"] = step;
    j["loss"] = lg.loss;
    log << j.dump() << "\n";
    last = lg.loss;
  }
  auto final_loss = rl::sft_loss(policy, samples).loss;
  std::cout << "sft: " << steps << " steps over " << samples.size()
            << " samples, loss " << show(last) << " -> " << show(final_loss)
            << "\n";
  std::cout << "log written to " << out << "\n";
  return 0;
}

int cmd_train_grpo(const GlobalConfig& cfg,
                   const std::vector<std::string>& problem_filter,
                   int steps, const std::string& out) {
  if (steps < 1) throw UserError("--steps must be >= 1");
  auto all = load_catalog(cfg);
  std::vector<synth::ProblemInstance> problems;
  if (problem_filter.empty()) {
    problems = all;
  } else {
    for (const auto& id : problem_filter)
      problems.push_back(find_problem(all, id));
  }
  auto policy = make_policy(problems);
  ensure_writable(out);
  Rng rng(cfg.master_seed);
  auto log = rl::train_grpo(policy, problems, cfg.solver, cfg.reward,
                            cfg.grpo, steps, rng);
  rl::write_train_log(log, out);
  std::cout << "grpo: " << steps << " steps over " << problems.size()
            << " problems, mean reward "
            << show(log.steps.front().mean_reward) << " -> "
            << show(log.steps.back().mean_reward) << "\n";
  std::cout << "log written to " << out << "\n";
  return 0;
}

int cmd_eval_passk(const std::string& input, int k, const std::string& out) {
  if (k < 1) throw UserError("--k must be >= 1");
  std::vector<std::vector<bool>> flags;
  std::istringstream in(read_file(input));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      flags.push_back(j.at("flags").get<std::vector<bool>>());
    } catch (const std::exception& e) {
      throw UserError("bad input line " + std::to_string(lineno) + ": " +
                      e.what());
    }
  }
  if (flags.empty()) throw UserError("no problems in " + input);
  double value = scalebench::pass_at_k(flags, k);
  std::cout << "pass@" << k << " = " << show(value) << " over "
            << flags.size() << " problems\n";
  if (!out.empty()) {
    ensure_writable(out);
    nlohmann::ordered_json j;
    j["k"] = k;
    j["pass_at_k"] = value;
    j["problems"] = flags.size();
    std::ofstream(out) << j.dump() << "\n";
  }
  return 0;
}

int cmd_eval_diversity(const GlobalConfig& cfg, const std::string& input,
                       int k, const std::string& out) {
  if (k < 1) throw UserError("--k must be >= 1");
  auto problems = load_catalog(cfg);
  std::map<std::string, std::vector<scalebench::Generation>> gens;
  std::istringstream in(read_file(input));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string problem_id, model_text;
    bool correct = false;
    try {
      auto j = nlohmann::json::parse(line);
      problem_id = j.at("problem").get<std::string>();
      model_text = j.at("model").get<std::string>();
      correct = j.at("correct").get<bool>();
    } catch (const std::exception& e) {
      throw UserError("bad input line " + std::to_string(lineno) + ": " +
                      e.what());
    }
    const auto& p = find_problem(problems, problem_id);
    scalebench::Generation g;
    g.correct = correct;
    if (correct) {
      // A formulation that no longer grounds cannot count as correct.
      try {
        g.flat = model::ground(model::parse_model(model_text), p.data);
      } catch (const std::exception&) {
        g.correct = false;
      }
    }
    gens[problem_id].push_back(std::move(g));
  }
  if (gens.empty()) throw UserError("no generations in " + input);
  auto report = scalebench::diversity(gens, k);
  std::cout << "diversity@" << k << ": average " << show(report.average)
            << " distinct formulations over " << gens.size()
            << " problems\n";
  std::cout << "component types per solved problem: variables "
            << show(report.avg_variable_types) << ", constraints "
            << show(report.avg_constraint_types) << ", objective "
            << show(report.avg_objective_types) << "\n";
  if (!out.empty()) {
    ensure_writable(out);
    scalebench::write_diversity_jsonl(report, out);
    std::cout << "report written to " << out << "\n";
  }
  return 0;
}

int cmd_scale_bench(const GlobalConfig& cfg,
                    const std::vector<std::string>& source_args,
                    const std::vector<int>& scales, int replicates,
                    const std::string& out, const std::string& jsonl) {
  if (replicates < 1) throw UserError("--replicates must be >= 1");
  if (scales.empty()) throw UserError("--scales must name at least one");
  for (int s : scales)
    if (s < 1) throw UserError("scale factors must be >= 1");
  std::vector<scalebench::FormulationSource> sources;
  for (const auto& arg : source_args) {
    auto first = arg.find(':');
    auto second = first == std::string::npos ? std::string::npos
                                             : arg.find(':', first + 1);
    if (second == std::string::npos)
      throw UserError("--source wants label:family:strategy, got " + arg);
    scalebench::FormulationSource src;
    src.label = arg.substr(0, first);
    src.family = arg.substr(first + 1, second - first - 1);
    src.strategy = arg.substr(second + 1);
    const auto* spec = synth::find_family(src.family);
    if (!spec) throw UserError("unknown family: " + src.family);
    bool known = false;
    for (const auto& st : spec->strategies)
      if (st.name == src.strategy) known = true;
    if (!known)
      throw UserError("unknown strategy " + src.strategy + " in family " +
                      src.family);
    sources.push_back(std::move(src));
  }
  if (sources.empty()) throw UserError("--source must name at least one");

  ensure_writable(out);
  if (!jsonl.empty()) ensure_writable(jsonl);
  scalebench::ScaleConfig scale_cfg;
  scale_cfg.b_max_factor = cfg.b_max_factor;
  scale_cfg.solve = cfg.solver;
  auto records = scalebench::bench_efficiency(sources, scales, replicates,
                                              cfg.solver, cfg.reward,
                                              scale_cfg);
  scalebench::write_bench_csv(records, out);
  if (!jsonl.empty()) scalebench::write_bench_jsonl(records, jsonl);
  for (const auto& s : scalebench::summarize(records)) {
    std::cout << s.label << " " << s.family << " x" << s.scale << ": ";
    if (s.empty) {
      std::cout << "no correct solves\n";
      continue;
    }
    std::cout << s.correct << "/" << replicates << " correct, mean "
              << show(s.mean_iterations) << " iterations, "
              << show(s.mean_nodes) << " nodes, " << show(s.mean_nnz)
              << " nonzeros\n";
  }
  std::cout << "records written to " << out << "\n";
  return 0;
}

int cmd_stats(const GlobalConfig& cfg, const std::string& model_path,
              const std::string& problem_id, const std::string& data_path,
              const std::string& out) {
  auto data = resolve_data(cfg, problem_id, data_path);
  auto flat = ground_user_model(read_file(model_path), data);
  auto stats = model::struct_stats(flat);
  std::cout << "num_vars: " << stats.num_vars << "\n";
  std::cout << "num_constraints: " << stats.num_constraints << "\n";
  std::cout << "nnz: " << stats.nnz << "\n";
  if (!out.empty()) {
    ensure_writable(out);
    nlohmann::ordered_json j;
    j["num_vars"] = stats.num_vars;
    j["num_constraints"] = stats.num_constraints;
    j["nnz"] = stats.nnz;
    std::ofstream(out) << j.dump() << "\n";
  }
  return 0;
}

int cmd_export_lp(const GlobalConfig& cfg, const std::string& model_path,
                  const std::string& problem_id,
                  const std::string& data_path, const std::string& out) {
  auto data = resolve_data(cfg, problem_id, data_path);
  auto flat = ground_user_model(read_file(model_path), data);
  ensure_writable(out);
  std::ofstream(out) << model::export_lp(flat);
  auto stats = model::struct_stats(flat);
  std::cout << "wrote " << out << " (" << stats.num_vars << " variables, "
            << stats.num_constraints << " constraints)\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"sage-forge: strategy-aware optimization modeling pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "configuration file (key = value sections)")
      ->envname("SAGE_FORGE_CONFIG");
  bool seed_given = false;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "master seed override")
      ->each([&](const std::string&) { seed_given = true; });
  std::string catalog_override;
  app.add_option("--catalog", catalog_override,
                 "problem catalog JSON (default: built-in)");

  auto* sc_synth =
      app.add_subcommand("synth", "propose, verify, and store a corpus");
  int k = 3;
  sc_synth->add_option("--k", k, "strategies to propose per problem")
      ->check(CLI::PositiveNumber);
  std::string synth_corpus, synth_manifest;
  sc_synth->add_option("--corpus,--out", synth_corpus,
                       "corpus output path (default from config)");
  sc_synth->add_option("--manifest", synth_manifest,
                       "manifest output path (default from config)");

  auto* sc_verify =
      app.add_subcommand("verify", "re-check every sample in a corpus");
  std::string verify_corpus;
  sc_verify->add_option("--corpus", verify_corpus,
                        "corpus to verify (default from config)");

  auto* sc_reward =
      app.add_subcommand("reward", "score one response against a problem");
  std::string reward_problem, reward_response, reward_out;
  sc_reward->add_option("--problem", reward_problem, "problem id")
      ->required();
  sc_reward->add_option("--response", reward_response, "response text file")
      ->required();
  sc_reward->add_option("--out", reward_out, "JSON breakdown output");

  auto* sc_sft = app.add_subcommand(
      "train-sft", "fit the choice policy to a verified corpus");
  std::string sft_corpus, sft_out;
  int sft_steps = 100;
  double sft_lr = 0.5;
  sc_sft->add_option("--corpus", sft_corpus,
                     "training corpus (default from config)");
  sc_sft->add_option("--steps", sft_steps, "gradient steps");
  sc_sft->add_option("--lr", sft_lr, "learning rate");
  sc_sft->add_option("--out", sft_out, "JSONL loss log (default from "
                                       "config logs path)");

  auto* sc_grpo = app.add_subcommand(
      "train-grpo", "segment-weighted GRPO over catalog problems");
  std::vector<std::string> grpo_problems;
  int grpo_steps = 100;
  std::string grpo_out;
  sc_grpo->add_option("--problems", grpo_problems,
                      "problem ids to train on (default: all)")
      ->delimiter(',');
  sc_grpo->add_option("--steps", grpo_steps, "training steps");
  sc_grpo->add_option("--out", grpo_out,
                      "JSONL training log (default from config logs path)");

  auto* sc_passk = app.add_subcommand(
      "eval-passk", "pass@K over per-problem correctness flags");
  std::string passk_input, passk_out;
  int passk_k = 1;
  sc_passk
      ->add_option("--input", passk_input,
                   "JSONL lines {\"problem\", \"flags\": [bool...]}")
      ->required();
  sc_passk->add_option("--k", passk_k, "window size K")->required();
  sc_passk->add_option("--out", passk_out, "JSON result output");

  auto* sc_div = app.add_subcommand(
      "eval-diversity", "distinct correct formulations within K");
  std::string div_input, div_out;
  int div_k = 1;
  sc_div
      ->add_option("--input", div_input,
                   "JSONL lines {\"problem\", \"model\", \"correct\"}")
      ->required();
  sc_div->add_option("--k", div_k, "window size K")->required();
  sc_div->add_option("--out", div_out, "JSONL report output");

  auto* sc_bench = app.add_subcommand(
      "scale-bench", "solver effort of formulations across instance scale");
  std::vector<std::string> bench_sources;
  std::vector<int> bench_scales{1, 2, 4, 8};
  int bench_replicates = 5;
  std::string bench_out = "bench.csv", bench_jsonl;
  sc_bench
      ->add_option("--source", bench_sources,
                   "formulation as label:family:strategy (repeatable)")
      ->required();
  sc_bench->add_option("--scales", bench_scales, "scale factors")
      ->delimiter(',');
  sc_bench->add_option("--replicates", bench_replicates,
                       "instances per scale");
  sc_bench->add_option("--out", bench_out, "CSV output path");
  sc_bench->add_option("--jsonl", bench_jsonl, "JSONL output path");

  auto* sc_stats = app.add_subcommand(
      "stats", "structural size of a model grounded against data");
  std::string stats_model, stats_problem, stats_data, stats_out;
  sc_stats->add_option("--model", stats_model, "model template file")
      ->required();
  sc_stats->add_option("--problem", stats_problem,
                       "catalog problem supplying the data");
  sc_stats->add_option("--data", stats_data, "data binding JSON file");
  sc_stats->add_option("--out", stats_out, "JSON stats output");

  auto* sc_lp = app.add_subcommand(
      "export-lp", "ground a model and write it in LP format");
  std::string lp_model, lp_problem, lp_data, lp_out;
  sc_lp->add_option("--model", lp_model, "model template file")->required();
  sc_lp->add_option("--problem", lp_problem,
                    "catalog problem supplying the data");
  sc_lp->add_option("--data", lp_data, "data binding JSON file");
  sc_lp->add_option("--out", lp_out, "LP output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    GlobalConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed_given) cfg.master_seed = seed;
    if (!catalog_override.empty()) cfg.catalog_path = catalog_override;

    if (app.got_subcommand(sc_synth))
      return cmd_synth(cfg, k,
                       synth_corpus.empty() ? cfg.corpus_path : synth_corpus,
                       synth_manifest.empty() ? cfg.manifest_path
                                              : synth_manifest);
    if (app.got_subcommand(sc_verify))
      return cmd_verify(cfg, verify_corpus.empty() ? cfg.corpus_path
                                                   : verify_corpus);
    if (app.got_subcommand(sc_reward))
      return cmd_reward(cfg, reward_problem, reward_response, reward_out);
    if (app.got_subcommand(sc_sft))
      return cmd_train_sft(cfg,
                           sft_corpus.empty() ? cfg.corpus_path : sft_corpus,
                           sft_steps, sft_lr,
                           sft_out.empty() ? cfg.log_path : sft_out);
    if (app.got_subcommand(sc_grpo))
      return cmd_train_grpo(cfg, grpo_problems, grpo_steps,
                            grpo_out.empty() ? cfg.log_path : grpo_out);
    if (app.got_subcommand(sc_passk))
      return cmd_eval_passk(passk_input, passk_k, passk_out);
    if (app.got_subcommand(sc_div))
      return cmd_eval_diversity(cfg, div_input, div_k, div_out);
    if (app.got_subcommand(sc_bench))
      return cmd_scale_bench(cfg, bench_sources, bench_scales,
                             bench_replicates, bench_out, bench_jsonl);
    if (app.got_subcommand(sc_stats))
      return cmd_stats(cfg, stats_model, stats_problem, stats_data,
                       stats_out);
    if (app.got_subcommand(sc_lp))
      return cmd_export_lp(cfg, lp_model, lp_problem, lp_data, lp_out);
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("sage-forge");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli((int)argv.size(), argv.data());
}

}  // namespace sageforge::cli
