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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "sageforge/cli/cli.hpp"
#include "sageforge/model/lpfile.hpp"
#include "sageforge/reward/reward.hpp"
#include "sageforge/scalebench/scalebench.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/synth/synth.hpp"

namespace sageforge {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int rc = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  int rc = cli::run_cli(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {rc, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("sageforge_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

const synth::ProblemInstance& transportation_problem() {
  static const auto problems = synth::builtin_catalog();
  for (const auto& p : problems)
    if (p.id == "transportation_base") return p;
  REQUIRE(false);
  return problems.front();
}

// A full response (reasoning plus fenced model) for a named transportation
// strategy, produced by the reference generator.
std::string transportation_response(const std::string& strategy) {
  const auto& p = transportation_problem();
  auto gen = synth::make_generator({});
  auto cands = synth::propose_strategies(p, 3, *gen);
  for (const auto& c : cands) {
    if (c.name != strategy) continue;
    return synth::render_response(synth::realize(p, c, *gen));
  }
  REQUIRE(false);
  return {};
}

const std::string kTinyModel =
    "set Items;\n"
    "param Weight{i in Items};\n"
    "var Take{i in Items} binary;\n"
    "maximize value: sum {i in Items} Weight[i] * Take[i];\n"
    "subject to cap: sum {i in Items} Take[i] <= 1;\n";

const std::string kTinyData =
    R"({"sets":{"Items":["A","B"]},"params":{"Weight":{"A":2,"B":3}},"scalars":{}})";

TEST_SUITE("cli") {

TEST_CASE("default config survives a serialize and parse round trip") {
  cli::GlobalConfig a;
  auto b = cli::parse_config(cli::config_to_text(a));
  CHECK(b.master_seed == a.master_seed);
  CHECK(b.catalog_path == a.catalog_path);
  CHECK(b.corpus_path == a.corpus_path);
  CHECK(b.manifest_path == a.manifest_path);
  CHECK(b.log_path == a.log_path);
  CHECK(b.generator.kind == a.generator.kind);
  CHECK(b.solver.feas_tol == a.solver.feas_tol);
  CHECK(b.solver.max_iterations == a.solver.max_iterations);
  CHECK(b.reward.per_component == a.reward.per_component);
  CHECK(b.reward.alpha_gap == a.reward.alpha_gap);
  CHECK(b.grpo.w_strategy == a.grpo.w_strategy);
  CHECK(b.grpo.learning_rate == a.grpo.learning_rate);
  CHECK(b.grpo.mean_only_advantages == a.grpo.mean_only_advantages);
  CHECK(b.b_max_factor == a.b_max_factor);
}

TEST_CASE("every config field round trips exactly") {
  cli::GlobalConfig a;
  a.master_seed = 123456789123456789ull;
  a.catalog_path = "cat.json";
  a.corpus_path = "my corpus.jsonl";
  a.manifest_path = "m.json";
  a.log_path = "logs/out.jsonl";
  a.generator.kind = synth::GeneratorSpec::Kind::Subprocess;
  a.generator.command = "python3 gen.py --temp 0.7";
  a.generator.host = "worker-3";
  a.generator.port = 9191;
  a.solver.feas_tol = 1e-7;
  a.solver.int_tol = 1e-5;
  a.solver.max_iterations = 777;
  a.solver.max_nodes = 55;
  a.solver.time_limit_seconds = 1.5;
  a.reward.per_component = 0.1;
  a.reward.tier_exec_fail = 0.05;
  a.reward.tier_infeasible = 0.25;
  a.reward.tier_incorrect = 0.45;
  a.reward.tier_correct = 0.95;
  a.reward.alpha_iter = 14.0;
  a.reward.alpha_gap = 1.0 / 3.0;
  a.reward.alpha_nodes = 4.5;
  a.reward.beta_gap = 0.25;
  a.reward.beta_nodes = 0.75;
  a.reward.alpha_eff_milp = 0.9;
  a.reward.check_abs_tol = 1e-5;
  a.reward.check_rel_tol = 1e-3;
  a.grpo.group_size = 4;
  a.grpo.clip = 0.3;
  a.grpo.kl_coeff = 0.01;
  a.grpo.w_strategy = 2.5;
  a.grpo.w_modeling = 1.25;
  a.grpo.w_check = 0.75;
  a.grpo.w_other = 0.5;
  a.grpo.learning_rate = 1.0 / 7.0;
  a.grpo.adv_epsilon = 1e-9;
  a.grpo.mean_only_advantages = true;
  a.grpo.minibatch_size = 2;
  a.b_max_factor = 8;

  auto b = cli::parse_config(cli::config_to_text(a));
  CHECK(b.master_seed == a.master_seed);
  CHECK(b.catalog_path == a.catalog_path);
  CHECK(b.corpus_path == a.corpus_path);
  CHECK(b.manifest_path == a.manifest_path);
  CHECK(b.log_path == a.log_path);
  CHECK(b.generator.kind == a.generator.kind);
  CHECK(b.generator.command == a.generator.command);
  CHECK(b.generator.host == a.generator.host);
  CHECK(b.generator.port == a.generator.port);
  CHECK(b.solver.feas_tol == a.solver.feas_tol);
  CHECK(b.solver.int_tol == a.solver.int_tol);
  CHECK(b.solver.max_iterations == a.solver.max_iterations);
  CHECK(b.solver.max_nodes == a.solver.max_nodes);
  CHECK(b.solver.time_limit_seconds == a.solver.time_limit_seconds);
  CHECK(b.reward.per_component == a.reward.per_component);
  CHECK(b.reward.tier_exec_fail == a.reward.tier_exec_fail);
  CHECK(b.reward.tier_infeasible == a.reward.tier_infeasible);
  CHECK(b.reward.tier_incorrect == a.reward.tier_incorrect);
  CHECK(b.reward.tier_correct == a.reward.tier_correct);
  CHECK(b.reward.alpha_iter == a.reward.alpha_iter);
  CHECK(b.reward.alpha_gap == a.reward.alpha_gap);
  CHECK(b.reward.alpha_nodes == a.reward.alpha_nodes);
  CHECK(b.reward.beta_gap == a.reward.beta_gap);
  CHECK(b.reward.beta_nodes == a.reward.beta_nodes);
  CHECK(b.reward.alpha_eff_milp == a.reward.alpha_eff_milp);
  CHECK(b.reward.check_abs_tol == a.reward.check_abs_tol);
  CHECK(b.reward.check_rel_tol == a.reward.check_rel_tol);
  CHECK(b.grpo.group_size == a.grpo.group_size);
  CHECK(b.grpo.clip == a.grpo.clip);
  CHECK(b.grpo.kl_coeff == a.grpo.kl_coeff);
  CHECK(b.grpo.w_strategy == a.grpo.w_strategy);
  CHECK(b.grpo.w_modeling == a.grpo.w_modeling);
  CHECK(b.grpo.w_check == a.grpo.w_check);
  CHECK(b.grpo.w_other == a.grpo.w_other);
  CHECK(b.grpo.learning_rate == a.grpo.learning_rate);
  CHECK(b.grpo.adv_epsilon == a.grpo.adv_epsilon);
  CHECK(b.grpo.mean_only_advantages == a.grpo.mean_only_advantages);
  CHECK(b.grpo.minibatch_size == a.grpo.minibatch_size);
  CHECK(b.b_max_factor == a.b_max_factor);

  auto tcp = cli::GlobalConfig{};
  tcp.generator.kind = synth::GeneratorSpec::Kind::Tcp;
  tcp.generator.host = "127.0.0.1";
  tcp.generator.port = 4000;
  auto back = cli::parse_config(cli::config_to_text(tcp));
  CHECK(back.generator.kind == synth::GeneratorSpec::Kind::Tcp);
  CHECK(back.generator.host == "127.0.0.1");
  CHECK(back.generator.port == 4000);
}

TEST_CASE("malformed config text is rejected") {
  CHECK_THROWS_AS(cli::parse_config("nope = 1\n"), cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("[nosuchsection]\nx = 1\n"),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("[reward]\nper_component = abc\n"),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("master_seed = -3\n"),
                  cli::ConfigError);
  CHECK_THROWS_AS(
      cli::parse_config("[grpo]\nmean_only_advantages = yes\n"),
      cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("[paths]\ncorpus = bare.jsonl\n"),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("[generator]\nkind = \"psychic\"\n"),
                  cli::ConfigError);
  CHECK_THROWS_AS(cli::parse_config("just words\n"), cli::ConfigError);
  CHECK_THROWS_AS(cli::load_config("/nonexistent/cfg"), cli::ConfigError);
}

TEST_CASE("config parsing tolerates comments and loose whitespace") {
  auto cfg = cli::parse_config(
      "# leading comment\n"
      "\n"
      "  master_seed   =   7  \n"
      "  [reward]  \n"
      "per_component=0.1\n");
  CHECK(cfg.master_seed == 7);
  CHECK(cfg.reward.per_component == 0.1);
  CHECK(cfg.solver.max_iterations == cli::GlobalConfig{}.solver.max_iterations);

  auto inlined = cli::parse_config(
      "master_seed = 9     # master seed\n"
      "[generator]\n"
      "kind = \"reference\"   # reference | subprocess | tcp\n"
      "command = \"grep '#' log\"\n");
  CHECK(inlined.master_seed == 9);
  CHECK(inlined.generator.kind == synth::GeneratorSpec::Kind::Reference);
  CHECK(inlined.generator.command == "grep '#' log");
}

TEST_CASE("help exits zero for the root and every subcommand") {
  auto root = run({"--help"});
  CHECK(root.rc == 0);
  CHECK(root.out.find("Usage") != std::string::npos);
  for (const std::string sub :
       {"synth", "verify", "reward", "train-sft", "train-grpo", "eval-passk",
        "eval-diversity", "scale-bench", "stats", "export-lp"}) {
    auto r = run({sub, "--help"});
    CHECK(r.rc == 0);
    CHECK(r.out.find(sub) != std::string::npos);
  }
  CHECK(run({}).rc == 1);
  CHECK(run({"frobnicate"}).rc == 1);
  CHECK(run({"reward", "--no-such-flag"}).rc == 1);
}

TEST_CASE("synth then verify round trips a corpus through files") {
  auto dir = fresh_dir("synthflow");
  auto corpus = (dir / "corpus.jsonl").string();
  auto manifest = (dir / "manifest.json").string();
  auto r = run({"synth", "--k", "3", "--corpus", corpus, "--manifest",
                manifest});
  CHECK(r.rc == 0);
  CHECK(r.out.find("kept") != std::string::npos);
  CHECK(fs::exists(corpus));
  CHECK(fs::exists(manifest));

  auto v = run({"verify", "--corpus", corpus});
  CHECK(v.rc == 0);
  CHECK(v.out.find("re-verified") != std::string::npos);

  auto first = nlohmann::json::parse(lines_of(slurp(corpus)).front());
  first["strategy_id"] = 9;
  first["model"] = "not a model at all";
  std::ofstream(corpus, std::ios::app) << first.dump() << "\n";
  auto bad = run({"verify", "--corpus", corpus});
  CHECK(bad.rc == 1);
  CHECK(bad.err.find("failed re-verification") != std::string::npos);
  CHECK(bad.out.find("execution_failure") != std::string::npos);

  CHECK(run({"verify", "--corpus", (dir / "missing.jsonl").string()}).rc ==
        1);
}

TEST_CASE("reward scores a response file and writes the breakdown") {
  auto dir = fresh_dir("reward");
  auto response = dir / "response.txt";
  auto text = transportation_response("link-restricted-flow");
  write_file(response, text);

  const auto& p = transportation_problem();
  reward::ScoringInstance inst{p.data, p.ground_truth, p.problem_class};
  auto expected = reward::composite_reward(text, inst, {}, {});
  REQUIRE(expected.outcome_kind == reward::OutcomeKind::Correct);
  REQUIRE(expected.r_format == 1.0);

  auto out = (dir / "r.json").string();
  auto r = run({"reward", "--problem", "transportation_base", "--response",
                response.string(), "--out", out});
  CHECK(r.rc == 0);
  CHECK(r.out.find("total reward:") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("n_seg").get<int>() == expected.n_seg);
  CHECK(j.at("r_format").get<double>() == expected.r_format);
  CHECK(j.at("r_outcome").get<double>() == expected.r_outcome);
  CHECK(j.at("r_efficiency").get<double>() == expected.r_efficiency);
  CHECK(j.at("total").get<double>() == expected.total);
  CHECK(j.at("outcome").get<std::string>() == "correct");
  REQUIRE(expected.m.has_value());
  CHECK(j.at("m").get<double>() == *expected.m);
}

TEST_CASE("reward reports missing problems and files as user errors") {
  auto dir = fresh_dir("rewarderr");
  auto response = dir / "r.txt";
  write_file(response, "x");
  auto miss = run({"reward", "--problem", "no_such_problem", "--response",
                   response.string()});
  CHECK(miss.rc == 1);
  CHECK(miss.err.find("problem not found") != std::string::npos);
  CHECK(run({"reward", "--problem", "transportation_base", "--response",
             (dir / "gone.txt").string()})
            .rc == 1);
}

TEST_CASE("config file changes scoring through flag and environment") {
  auto dir = fresh_dir("cfgeffect");
  auto response = dir / "response.txt";
  write_file(response, transportation_response("link-restricted-flow"));
  auto cfg = dir / "forge.conf";
  write_file(cfg, "[reward]\nper_component = 0.1\n");
  auto out = (dir / "r.json").string();

  auto flagged = run({"--config", cfg.string(), "reward", "--problem",
                      "transportation_base", "--response",
                      response.string(), "--out", out});
  CHECK(flagged.rc == 0);
  CHECK(nlohmann::json::parse(slurp(out)).at("r_format").get<double>() ==
        0.5);

  ::setenv("SAGE_FORGE_CONFIG", cfg.string().c_str(), 1);
  auto from_env = run({"reward", "--problem", "transportation_base",
                       "--response", response.string(), "--out", out});
  ::unsetenv("SAGE_FORGE_CONFIG");
  CHECK(from_env.rc == 0);
  CHECK(nlohmann::json::parse(slurp(out)).at("r_format").get<double>() ==
        0.5);

  auto broken = run({"--config", (dir / "absent.conf").string(), "reward",
                     "--problem", "transportation_base", "--response",
                     response.string()});
  CHECK(broken.rc == 1);
}

TEST_CASE("sft training logs a decreasing loss") {
  auto dir = fresh_dir("sft");
  auto corpus = (dir / "corpus.jsonl").string();
  REQUIRE(run({"synth", "--corpus", corpus}).rc == 0);
  auto log = (dir / "sft.jsonl").string();
  auto r = run({"train-sft", "--corpus", corpus, "--steps", "5", "--lr",
                "0.5", "--out", log});
  CHECK(r.rc == 0);
  auto rows = lines_of(slurp(log));
  REQUIRE(rows.size() == 5);
  double first = nlohmann::json::parse(rows.front()).at("loss");
  double last = nlohmann::json::parse(rows.back()).at("loss");
  CHECK(last < first);
  CHECK(nlohmann::json::parse(rows.front()).at("step").get<int>() == 1);

  CHECK(run({"train-sft", "--corpus", (dir / "nope.jsonl").string(),
             "--out", log})
            .rc == 1);
  CHECK(run({"train-sft", "--corpus", corpus, "--steps", "0", "--out", log})
            .rc == 1);
}

TEST_CASE("grpo training is byte deterministic for a fixed seed") {
  auto dir = fresh_dir("grpo");
  auto log1 = (dir / "a.jsonl").string();
  auto log2 = (dir / "b.jsonl").string();
  auto log3 = (dir / "c.jsonl").string();
  std::vector<std::string> base{"train-grpo", "--steps", "2", "--problems",
                                "transportation_base"};
  auto a = base;
  a.insert(a.end(), {"--out", log1});
  auto b = base;
  b.insert(b.end(), {"--out", log2});
  REQUIRE(run(a).rc == 0);
  REQUIRE(run(b).rc == 0);
  CHECK(slurp(log1) == slurp(log2));

  std::vector<std::string> c{"--seed", "43", "train-grpo", "--steps", "2",
                             "--problems", "transportation_base", "--out",
                             log3};
  REQUIRE(run(c).rc == 0);
  CHECK(slurp(log3) != slurp(log1));
  CHECK(lines_of(slurp(log1)).size() == 2);

  CHECK(run({"train-grpo", "--problems", "no_such_problem", "--out", log1})
            .rc == 1);
}

TEST_CASE("pass at k evaluation reads flag files") {
  auto dir = fresh_dir("passk");
  auto input = dir / "flags.jsonl";
  std::ofstream f(input);
  auto row = [&](const std::string& id, std::vector<bool> flags) {
    nlohmann::ordered_json j;
    j["problem"] = id;
    j["flags"] = flags;
    f << j.dump() << "\n";
  };
  row("p1", {true});
  row("p2", {false});
  row("p3", {true, true});
  row("p4", {false, true});
  row("p5", {false, false});
  f.close();

  auto out = (dir / "passk.json").string();
  auto r = run({"eval-passk", "--input", input.string(), "--k", "2",
                "--out", out});
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("k").get<int>() == 2);
  CHECK(j.at("pass_at_k").get<double>() == 0.6);
  CHECK(j.at("problems").get<int>() == 5);

  auto k1 = run({"eval-passk", "--input", input.string(), "--k", "1"});
  CHECK(k1.rc == 0);
  CHECK(k1.out.find("0.4") != std::string::npos);

  CHECK(run({"eval-passk", "--input", input.string(), "--k", "0"}).rc == 1);
  write_file(dir / "bad.jsonl", "{\"problem\":\"p\"}\n");
  CHECK(run({"eval-passk", "--input", (dir / "bad.jsonl").string(), "--k",
             "1"})
            .rc == 1);
  write_file(dir / "empty.jsonl", "\n");
  CHECK(run({"eval-passk", "--input", (dir / "empty.jsonl").string(), "--k",
             "1"})
            .rc == 1);
}

TEST_CASE("diversity evaluation counts distinct correct formulations") {
  auto dir = fresh_dir("diversity");
  auto flow = transportation_response("link-restricted-flow");
  auto agg = transportation_response("aggregated-cost");
  auto fence = [](const std::string& text) {
    auto open = text.find("```");
    REQUIRE(open != std::string::npos);
    auto start = text.find('\n', open) + 1;
    auto close = text.find("```", start);
    REQUIRE(close != std::string::npos);
    return text.substr(start, close - start);
  };

  auto input = dir / "gens.jsonl";
  std::ofstream f(input);
  auto row = [&](const std::string& model, bool correct) {
    nlohmann::ordered_json j;
    j["problem"] = "transportation_base";
    j["model"] = model;
    j["correct"] = correct;
    f << j.dump() << "\n";
  };
  row(fence(flow), true);
  row(fence(agg), true);
  row(fence(flow), true);
  row("garbage that will not parse", true);
  f.close();

  auto out = (dir / "div.jsonl").string();
  auto r = run({"eval-diversity", "--input", input.string(), "--k", "4",
                "--out", out});
  CHECK(r.rc == 0);
  auto rows = lines_of(slurp(out));
  REQUIRE(rows.size() == 2);
  auto per = nlohmann::json::parse(rows[0]);
  CHECK(per.at("problem").get<std::string>() == "transportation_base");
  CHECK(per.at("distinct_correct").get<double>() == 2.0);
  auto summary = nlohmann::json::parse(rows[1]);
  CHECK(summary.at("average").get<double>() == 2.0);

  auto k1 = run({"eval-diversity", "--input", input.string(), "--k", "1"});
  CHECK(k1.rc == 0);
  CHECK(k1.out.find("average 1") != std::string::npos);

  write_file(dir / "unknown.jsonl",
             R"({"problem":"who","model":"x","correct":false})"
             "\n");
  CHECK(run({"eval-diversity", "--input", (dir / "unknown.jsonl").string(),
             "--k", "1"})
            .rc == 1);
}

TEST_CASE("scale bench writes records for every cell") {
  auto dir = fresh_dir("bench");
  auto csv = (dir / "bench.csv").string();
  auto jsonl = (dir / "bench.jsonl").string();
  auto r = run({"scale-bench", "--source",
                "compact:transportation:link-restricted-flow", "--scales",
                "1,2", "--replicates", "2", "--out", csv, "--jsonl",
                jsonl});
  CHECK(r.rc == 0);
  CHECK(r.out.find("x1") != std::string::npos);
  auto rows = lines_of(slurp(csv));
  REQUIRE(rows.size() == 5);
  CHECK(rows.front() == scalebench::bench_csv_header());
  CHECK(lines_of(slurp(jsonl)).size() == 4);

  CHECK(run({"scale-bench", "--source", "nocolons", "--out", csv}).rc == 1);
  CHECK(run({"scale-bench", "--source", "x:transportation:made-up", "--out",
             csv})
            .rc == 1);
  CHECK(run({"scale-bench", "--source",
             "compact:transportation:link-restricted-flow", "--replicates",
             "0", "--out", csv})
            .rc == 1);
}

TEST_CASE("stats reports grounded model dimensions") {
  auto dir = fresh_dir("stats");
  auto model = dir / "m.txt";
  auto data = dir / "d.json";
  write_file(model, kTinyModel);
  write_file(data, kTinyData);
  auto out = (dir / "s.json").string();
  auto r = run({"stats", "--model", model.string(), "--data", data.string(),
                "--out", out});
  CHECK(r.rc == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("num_vars").get<int>() == 2);
  CHECK(j.at("num_constraints").get<int>() == 1);
  CHECK(j.at("nnz").get<int>() == 2);

  auto cat = run({"stats", "--model", model.string(), "--problem",
                  "transportation_base"});
  CHECK(cat.rc == 1);
  CHECK(cat.err.find("ground") != std::string::npos);

  CHECK(run({"stats", "--model", model.string()}).rc == 1);
  CHECK(run({"stats", "--model", model.string(), "--data", data.string(),
             "--problem", "transportation_base"})
            .rc == 1);
  write_file(dir / "junk.txt", "garbage");
  CHECK(run({"stats", "--model", (dir / "junk.txt").string(), "--data",
             data.string()})
            .rc == 1);
}

TEST_CASE("lp export round trips through the importer") {
  auto dir = fresh_dir("lp");
  auto model = dir / "m.txt";
  auto data = dir / "d.json";
  write_file(model, kTinyModel);
  write_file(data, kTinyData);
  auto out = dir / "m.lp";
  auto r = run({"export-lp", "--model", model.string(), "--data",
                data.string(), "--out", out.string()});
  CHECK(r.rc == 0);
  auto text = slurp(out);
  CHECK(text.find("Maximize") != std::string::npos);
  auto back = model::import_lp(text);
  auto stats = model::struct_stats(back);
  CHECK(stats.num_vars == 2);
  CHECK(stats.num_constraints == 1);
  CHECK(stats.nnz == 2);

  CHECK(run({"export-lp", "--model", model.string(), "--data",
             data.string()})
            .rc == 1);
}

TEST_CASE("catalog override feeds every catalog consumer") {
  auto dir = fresh_dir("catalog");
  auto problems = synth::builtin_catalog();
  std::vector<synth::ProblemInstance> two(problems.begin(),
                                          problems.begin() + 2);
  auto cat = dir / "cat.json";
  write_file(cat, synth::catalog_to_json(two));
  auto corpus = (dir / "corpus.jsonl").string();
  auto r = run({"--catalog", cat.string(), "synth", "--corpus", corpus});
  CHECK(r.rc == 0);
  CHECK(r.out.find("2 problems") != std::string::npos);

  write_file(dir / "broken.json", "[{\"id\": 3}]");
  CHECK(run({"--catalog", (dir / "broken.json").string(), "synth",
             "--corpus", corpus})
            .rc == 1);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sageforge
