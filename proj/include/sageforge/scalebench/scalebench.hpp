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

#ifndef SAGEFORGE_SCALEBENCH_SCALEBENCH_HPP
#define SAGEFORGE_SCALEBENCH_SCALEBENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sageforge/model/flat.hpp"
#include "sageforge/reward/reward.hpp"
#include "sageforge/solver/solver.hpp"
#include "sageforge/synth/synth.hpp"

namespace sageforge::scalebench {

/// A scaled instance came out unsolvable even after the retry reseed.
struct InfeasibleGenerated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScaleSpec {
  std::string problem;     // base problem id
  int scale = 1;           // s in {1..8}
  int replicate = 0;       // in {0..4}
  int b_max_factor = 16;   // per-dimension cap, as a multiple of the base dim
  std::uint64_t seed = 0;
};

struct ScaleConfig {
  int b_max_factor = 16;
  solver::SolveConfig solve;
};

/// FNV-1a 64 over "<name>:<scale>:<replicate>". The recipe is normative;
/// data/derive_seed_golden.txt pins one vector.
std::uint64_t derive_seed(const std::string& problem_name, int scale_index,
                          int replicate);

/// min(base * s, base * b_max_factor), never below the base dimension.
int scaled_dim(int base, int s, int b_max_factor);

/// Expands a transportation instance: origins and destinations grow by s,
/// per-link limits are drawn from [20, 60) and rates from [1, 16), demands
/// and supplies are 0.8 of the column/row limit totals (rounded down) with
/// the last entry adjusted so totals balance exactly. The result is solved
/// once with the reference formulation; a failure reseeds and retries once
/// before throwing InfeasibleGenerated.
synth::ProblemInstance scale_transport(const synth::ProblemInstance& base,
                                       int s, std::uint64_t seed,
                                       const ScaleConfig& cfg = {});

/// Per-family expansion for every catalog family (transportation included,
/// by delegation). Key dimensions grow by s, data is redrawn from the seed,
/// and the scaled instance is re-verified by a solve of its reference
/// formulation, which also refreshes the ground truth.
synth::ProblemInstance scale_generic(const synth::ProblemInstance& base,
                                     int s, std::uint64_t seed,
                                     const ScaleConfig& cfg = {});

/// One formulation under benchmark: a fixed strategy applied to one family.
struct FormulationSource {
  std::string label;
  std::string family;
  std::string strategy;  // template name within the family
};

struct BenchRecord {
  std::string label;
  std::string family;
  int scale = 1;
  int replicate = 0;
  std::string status;  // optimal | infeasible | unbounded | limit | error
  long iterations = 0;
  long nodes = 0;
  double gap = 0.0;
  int num_vars = 0;
  int num_constraints = 0;
  long nnz = 0;
  double solve_time_s = 0.0;
  bool correct = false;  // optimal and matching the instance ground truth
};

struct BenchSummary {
  std::string label;
  std::string family;
  int scale = 1;
  int correct = 0;     // replicates counted into the means
  bool empty = false;  // no correct solve at this (label, scale)
  double mean_iterations = 0.0;
  double mean_nodes = 0.0;
  double mean_solve_time_s = 0.0;
  double mean_num_vars = 0.0;
  double mean_num_constraints = 0.0;
  double mean_nnz = 0.0;
};

/// Scales each source's family over the grid of scales x replicates, solves
/// every grounded formulation, and returns one record per cell. Instances
/// are shared across labels of the same family at each (scale, replicate).
std::vector<BenchRecord> bench_efficiency(
    const std::vector<FormulationSource>& sources,
    const std::vector<int>& scales, int replicates,
    const solver::SolveConfig& solver_cfg,
    const reward::RewardConfig& reward_cfg, const ScaleConfig& scale_cfg = {});

/// Means over correct records, grouped by (label, family, scale) in record
/// order. Groups with no correct record come back flagged empty.
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

std::string bench_csv_header();
void write_bench_csv(const std::vector<BenchRecord>& records,
                     const std::string& path);
void write_bench_jsonl(const std::vector<BenchRecord>& records,
                       const std::string& path);

/// Fraction of problems with at least one true flag among the first K.
/// Flags are in generation order; K must be >= 1 and the set non-empty.
double pass_at_k(const std::vector<std::vector<bool>>& flags_per_problem,
                 int k);

/// One generation of a formulation for a problem, in generation order.
struct Generation {
  bool correct = false;
  model::FlatModel flat;
};

struct DiversityReport {
  std::map<std::string, int> distinct_by_problem;
  double average = 0.0;
  double avg_variable_types = 0.0;
  double avg_constraint_types = 0.0;
  double avg_objective_types = 0.0;
};

/// Structural component signatures of a grounded model. Variable types pair
/// the domain with a bound class and an in-objective flag; constraint types
/// pair the sense with an arity class and a coefficient-pattern class; the
/// objective type pairs its sense with a distinct-coefficient count class.
std::set<std::string> variable_type_signatures(const model::FlatModel& m);
std::set<std::string> constraint_type_signatures(const model::FlatModel& m);
std::string objective_type_signature(const model::FlatModel& m);

/// Counts, per problem, the distinct canonical digests among correct
/// generations with index < K, and averages component-type counts over the
/// union of those generations' signatures. Problems with zero correct
/// generations in the window count 0 and contribute no component types.
DiversityReport diversity(
    const std::map<std::string, std::vector<Generation>>& generations, int k);

void write_diversity_jsonl(const DiversityReport& report,
                           const std::string& path);

}  // namespace sageforge::scalebench

#endif  // SAGEFORGE_SCALEBENCH_SCALEBENCH_HPP
