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

#ifndef SAGEFORGE_CLI_CLI_HPP
#define SAGEFORGE_CLI_CLI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sageforge/reward/reward.hpp"
#include "sageforge/rl/rl.hpp"
#include "sageforge/solver/solver.hpp"
#include "sageforge/synth/synth.hpp"

namespace sageforge::cli {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Everything a command run needs, in one document. File format is a
/// key = value text with one [section] per module; every key is optional
/// and falls back to the defaults below.
struct GlobalConfig {
  std::uint64_t master_seed = 42;

  // [paths]; an empty catalog path means the built-in catalog.
  std::string catalog_path;
  std::string corpus_path = "corpus.jsonl";
  std::string manifest_path;
  std::string log_path = "train_log.jsonl";

  synth::GeneratorSpec generator;
  solver::SolveConfig solver;
  reward::RewardConfig reward;
  rl::GrpoConfig grpo;
  int b_max_factor = 16;  // [scale] dimension cap for instance growth
};

/// Parses the config text. Unknown sections or keys and malformed values
/// throw ConfigError.
GlobalConfig parse_config(const std::string& text);

/// Serializes with full sections and round-trip-exact numbers, so
/// parse_config(config_to_text(c)) reproduces c field for field.
std::string config_to_text(const GlobalConfig& cfg);

GlobalConfig load_config(const std::string& path);
void save_config(const GlobalConfig& cfg, const std::string& path);

/// The whole command surface, in process. Returns the process exit code:
/// 0 success, 1 user error (bad flags, paths, or input data), 2 internal
/// failure.
int run_cli(int argc, const char* const* argv);

/// Convenience overload; args exclude the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace sageforge::cli

#endif  // SAGEFORGE_CLI_CLI_HPP
