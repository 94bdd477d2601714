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
#include <functional>
#include <map>
#include <sstream>

#include "sageforge/cli/cli.hpp"
#include "sageforge/util/numfmt.hpp"

namespace sageforge::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops an inline "# ..." comment from a value. A '#' inside a quoted
// string stays; everything after the closing quote must be a comment.
std::string strip_inline_comment(const std::string& v) {
  if (v.empty()) return v;
  if (v.front() == '"') {
    auto close = v.find('"', 1);
    if (close == std::string::npos) return v;
    auto rest = trim(v.substr(close + 1));
    if (rest.empty() || rest.front() == '#') return v.substr(0, close + 1);
    return v;
  }
  auto hash = v.find('#');
  if (hash == std::string::npos) return v;
  return trim(v.substr(0, hash));
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": " + v);
  }
}

long long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    long long n = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": " + v);
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    std::uint64_t n = std::stoull(v, &used);
    if (used != v.size() || v[0] == '-') throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned integer for " + key + ": " + v);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

std::string parse_string(const std::string& v, const std::string& key) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    throw ConfigError("string value for " + key + " must be quoted: " + v);
  return v.substr(1, v.size() - 2);
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string num(double v) { return format_shortest(v, 17); }

synth::GeneratorSpec::Kind parse_kind(const std::string& v,
                                      const std::string& key) {
  using Kind = synth::GeneratorSpec::Kind;
  if (v == "reference") return Kind::Reference;
  if (v == "subprocess") return Kind::Subprocess;
  if (v == "tcp") return Kind::Tcp;
  throw ConfigError("bad generator kind for " + key + ": " + v);
}

const char* kind_name(synth::GeneratorSpec::Kind k) {
  using Kind = synth::GeneratorSpec::Kind;
  switch (k) {
    case Kind::Reference: return "reference";
    case Kind::Subprocess: return "subprocess";
    case Kind::Tcp: return "tcp";
  }
  return "reference";
}

}  // namespace

GlobalConfig parse_config(const std::string& text) {
  GlobalConfig cfg;
  using Setter = std::function<void(GlobalConfig&, const std::string&,
                                    const std::string&)>;
  // One entry per known key, keyed "<section>.<key>"; the top level is "".
  static const std::map<std::string, Setter> setters = {
      {".master_seed",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.master_seed = parse_u64(v, k);
       }},
      {"paths.catalog",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.catalog_path = parse_string(v, k);
       }},
      {"paths.corpus",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.corpus_path = parse_string(v, k);
       }},
      {"paths.manifest",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.manifest_path = parse_string(v, k);
       }},
      {"paths.logs",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.log_path = parse_string(v, k);
       }},
      {"generator.kind",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.generator.kind = parse_kind(parse_string(v, k), k);
       }},
      {"generator.command",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.generator.command = parse_string(v, k);
       }},
      {"generator.host",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.generator.host = parse_string(v, k);
       }},
      {"generator.port",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.generator.port = (int)parse_int(v, k);
       }},
      {"solver.feas_tol",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.solver.feas_tol = parse_double(v, k);
       }},
      {"solver.int_tol",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.solver.int_tol = parse_double(v, k);
       }},
      {"solver.max_iterations",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.solver.max_iterations = parse_int(v, k);
       }},
      {"solver.max_nodes",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.solver.max_nodes = parse_int(v, k);
       }},
      {"solver.time_limit_seconds",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.solver.time_limit_seconds = parse_double(v, k);
       }},
      {"reward.per_component",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.per_component = parse_double(v, k);
       }},
      {"reward.tier_exec_fail",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.tier_exec_fail = parse_double(v, k);
       }},
      {"reward.tier_infeasible",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.tier_infeasible = parse_double(v, k);
       }},
      {"reward.tier_incorrect",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.tier_incorrect = parse_double(v, k);
       }},
      {"reward.tier_correct",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.tier_correct = parse_double(v, k);
       }},
      {"reward.alpha_iter",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.alpha_iter = parse_double(v, k);
       }},
      {"reward.alpha_gap",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.alpha_gap = parse_double(v, k);
       }},
      {"reward.alpha_nodes",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.alpha_nodes = parse_double(v, k);
       }},
      {"reward.beta_gap",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.beta_gap = parse_double(v, k);
       }},
      {"reward.beta_nodes",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.beta_nodes = parse_double(v, k);
       }},
      {"reward.alpha_eff_milp",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.alpha_eff_milp = parse_double(v, k);
       }},
      {"reward.check_abs_tol",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.check_abs_tol = parse_double(v, k);
       }},
      {"reward.check_rel_tol",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.reward.check_rel_tol = parse_double(v, k);
       }},
      {"grpo.group_size",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.group_size = (int)parse_int(v, k);
       }},
      {"grpo.clip",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.clip = parse_double(v, k);
       }},
      {"grpo.kl_coeff",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.kl_coeff = parse_double(v, k);
       }},
      {"grpo.w_strategy",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.w_strategy = parse_double(v, k);
       }},
      {"grpo.w_modeling",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.w_modeling = parse_double(v, k);
       }},
      {"grpo.w_check",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.w_check = parse_double(v, k);
       }},
      {"grpo.w_other",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.w_other = parse_double(v, k);
       }},
      {"grpo.learning_rate",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.learning_rate = parse_double(v, k);
       }},
      {"grpo.adv_epsilon",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.adv_epsilon = parse_double(v, k);
       }},
      {"grpo.mean_only_advantages",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.mean_only_advantages = parse_bool(v, k);
       }},
      {"grpo.minibatch_size",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.grpo.minibatch_size = (int)parse_int(v, k);
       }},
      {"scale.b_max_factor",
       [](GlobalConfig& c, const std::string& v, const std::string& k) {
         c.b_max_factor = (int)parse_int(v, k);
       }},
  };

  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("unterminated section header at line " +
                          std::to_string(lineno));
      section = trim(t.substr(1, t.size() - 2));
      if (setters.lower_bound(section + ".") == setters.end() ||
          setters.lower_bound(section + ".")->first.rfind(section + ".", 0)
              != 0)
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " +
                        std::to_string(lineno));
    auto key = trim(t.substr(0, eq));
    auto value = strip_inline_comment(trim(t.substr(eq + 1)));
    auto full = section + "." + key;
    auto it = setters.find(full);
    if (it == setters.end())
      throw ConfigError("unknown key " + (section.empty() ? key : full));
    it->second(cfg, value, full);
  }
  return cfg;
}

std::string config_to_text(const GlobalConfig& cfg) {
  std::ostringstream out;
  out << "# sage-forge configuration\n";
  out << "master_seed = " << cfg.master_seed << "\n";
  out << "\n[paths]\n";
  out << "catalog = " << quote(cfg.catalog_path) << "\n";
  out << "corpus = " << quote(cfg.corpus_path) << "\n";
  out << "manifest = " << quote(cfg.manifest_path) << "\n";
  out << "logs = " << quote(cfg.log_path) << "\n";
  out << "\n[generator]\n";
  out << "kind = " << quote(kind_name(cfg.generator.kind)) << "\n";
  out << "command = " << quote(cfg.generator.command) << "\n";
  out << "host = " << quote(cfg.generator.host) << "\n";
  out << "port = " << cfg.generator.port << "\n";
  out << "\n[solver]\n";
  out << "feas_tol = " << num(cfg.solver.feas_tol) << "\n";
  out << "int_tol = " << num(cfg.solver.int_tol) << "\n";
  out << "max_iterations = " << cfg.solver.max_iterations << "\n";
  out << "max_nodes = " << cfg.solver.max_nodes << "\n";
  out << "time_limit_seconds = " << num(cfg.solver.time_limit_seconds)
      << "\n";
  out << "\n[reward]\n";
  out << "per_component = " << num(cfg.reward.per_component) << "\n";
  out << "tier_exec_fail = " << num(cfg.reward.tier_exec_fail) << "\n";
  out << "tier_infeasible = " << num(cfg.reward.tier_infeasible) << "\n";
  out << "tier_incorrect = " << num(cfg.reward.tier_incorrect) << "\n";
  out << "tier_correct = " << num(cfg.reward.tier_correct) << "\n";
  out << "alpha_iter = " << num(cfg.reward.alpha_iter) << "\n";
  out << "alpha_gap = " << num(cfg.reward.alpha_gap) << "\n";
  out << "alpha_nodes = " << num(cfg.reward.alpha_nodes) << "\n";
  out << "beta_gap = " << num(cfg.reward.beta_gap) << "\n";
  out << "beta_nodes = " << num(cfg.reward.beta_nodes) << "\n";
  out << "alpha_eff_milp = " << num(cfg.reward.alpha_eff_milp) << "\n";
  out << "check_abs_tol = " << num(cfg.reward.check_abs_tol) << "\n";
  out << "check_rel_tol = " << num(cfg.reward.check_rel_tol) << "\n";
  out << "\n[grpo]\n";
  out << "group_size = " << cfg.grpo.group_size << "\n";
  out << "clip = " << num(cfg.grpo.clip) << "\n";
  out << "kl_coeff = " << num(cfg.grpo.kl_coeff) << "\n";
  out << "w_strategy = " << num(cfg.grpo.w_strategy) << "\n";
  out << "w_modeling = " << num(cfg.grpo.w_modeling) << "\n";
  out << "w_check = " << num(cfg.grpo.w_check) << "\n";
  out << "w_other = " << num(cfg.grpo.w_other) << "\n";
  // The LLM-scale sweep uses 1e-6; the toy softmax policy is scale-free,
  // so the default stays at a rate it actually learns under.
  out << "learning_rate = " << num(cfg.grpo.learning_rate) << "\n";
  out << "adv_epsilon = " << num(cfg.grpo.adv_epsilon) << "\n";
  out << "mean_only_advantages = "
      << (cfg.grpo.mean_only_advantages ? "true" : "false") << "\n";
  out << "minibatch_size = " << cfg.grpo.minibatch_size << "\n";
  out << "\n[scale]\n";
  out << "b_max_factor = " << cfg.b_max_factor << "\n";
  return out.str();
}

GlobalConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const GlobalConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << config_to_text(cfg);
}

}  // namespace sageforge::cli
