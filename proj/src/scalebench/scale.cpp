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

#include <algorithm>
#include <string>
#include <vector>

#include "sageforge/model/ast.hpp"
#include "sageforge/synth/catalog.hpp"
#include "sageforge/util/hash.hpp"
#include "sageforge/util/rng.hpp"

namespace sageforge::scalebench {

namespace {

using model::DataBinding;
using model::SetBinding;
using model::Tuple;
using synth::ProblemInstance;

std::vector<std::string> make_names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

SetBinding name_set(const std::string& set_name,
                    const std::vector<std::string>& names) {
  SetBinding s{set_name, 1, {}};
  for (const auto& n : names) s.members.push_back({n});
  return s;
}

long floor_frac(long value, long num, long den) {
  return value * num / den;
}

// Dense origin/destination grid: per-link limits from [20, 60) and rates
// from [1, 16); supplies and demands at 0.8 of the row/column limit totals,
// last entry bumped to balance.
DataBinding transport_data(int n_o, int n_d, Rng& rng) {
  DataBinding data;
  auto origins = make_names("O", n_o);
  auto dests = make_names("D", n_d);
  data.sets["Origins"] = name_set("Origins", origins);
  data.sets["Destinations"] = name_set("Destinations", dests);

  SetBinding links{"Links", 2, {}};
  for (const auto& o : origins)
    for (const auto& d : dests) links.members.push_back({o, d});
  data.sets["Links"] = links;

  std::vector<std::string> cities = origins;
  cities.insert(cities.end(), dests.begin(), dests.end());
  SetBinding pairs{"CityPairs", 2, {}};
  for (const auto& a : cities)
    for (const auto& b : cities) pairs.members.push_back({a, b});
  data.sets["CityPairs"] = std::move(pairs);

  auto& limit = data.params["Limit"];
  for (const auto& o : origins)
    for (const auto& d : dests)
      limit[{o, d}] = (double)rng.uniform_int(20, 60);
  auto& rate = data.params["Rate"];
  for (const auto& o : origins)
    for (const auto& d : dests)
      rate[{o, d}] = (double)rng.uniform_int(1, 16);

  auto& supply = data.params["Supply"];
  long total_supply = 0;
  for (const auto& o : origins) {
    long row = 0;
    for (const auto& d : dests) row += (long)limit.at({o, d});
    supply[{o}] = (double)floor_frac(row, 8, 10);
    total_supply += (long)supply.at({o});
  }
  auto& demand = data.params["Demand"];
  long total_demand = 0;
  for (const auto& d : dests) {
    long col = 0;
    for (const auto& o : origins) col += (long)limit.at({o, d});
    demand[{d}] = (double)floor_frac(col, 8, 10);
    total_demand += (long)demand.at({d});
  }
  if (total_supply > total_demand)
    demand[{dests.back()}] += (double)(total_supply - total_demand);
  else if (total_demand > total_supply)
    supply[{origins.back()}] += (double)(total_demand - total_supply);
  return data;
}

DataBinding project_data(int n_c, int n_p, Rng& rng) {
  DataBinding data;
  auto crews = make_names("C", n_c);
  auto projects = make_names("P", n_p);
  data.sets["Crews"] = name_set("Crews", crews);
  data.sets["Projects"] = name_set("Projects", projects);

  SetBinding pairs{"Pairs", 2, {}};
  for (const auto& c : crews)
    for (const auto& p : projects) pairs.members.push_back({c, p});
  data.sets["Pairs"] = std::move(pairs);

  auto& limit = data.params["Limit"];
  for (const auto& c : crews)
    for (const auto& p : projects)
      limit[{c, p}] = (double)rng.uniform_int(4, 8);
  auto& cost = data.params["Cost"];
  for (const auto& c : crews)
    for (const auto& p : projects)
      cost[{c, p}] = (double)rng.uniform_int(10, 26);

  auto& supply = data.params["Supply"];
  long total_supply = 0;
  for (const auto& c : crews) {
    long row = 0;
    for (const auto& p : projects) row += (long)limit.at({c, p});
    supply[{c}] = (double)floor_frac(row, 8, 10);
    total_supply += (long)supply.at({c});
  }
  auto& demand = data.params["Demand"];
  long total_demand = 0;
  for (const auto& p : projects) {
    long col = 0;
    for (const auto& c : crews) col += (long)limit.at({c, p});
    demand[{p}] = (double)floor_frac(col, 8, 10);
    total_demand += (long)demand.at({p});
  }
  if (total_supply > total_demand)
    demand[{projects.back()}] += (double)(total_supply - total_demand);
  else if (total_demand > total_supply)
    supply[{crews.back()}] += (double)(total_demand - total_supply);
  total_supply = std::max(total_supply, total_demand);

  // The unit-slot view explodes with supply, so it is only materialized
  // while the instance stays small enough to enumerate.
  if (total_supply <= 64) {
    SetBinding slots{"Slots", 1, {}};
    SetBinding arcs{"SlotArcs", 2, {}};
    auto& slot_cost = data.params["SlotCost"];
    for (const auto& c : crews) {
      for (int u = 1; u <= (int)supply.at({c}); ++u) {
        std::string slot = c + "u" + std::to_string(u);
        slots.members.push_back({slot});
        for (const auto& p : projects) {
          arcs.members.push_back({slot, p});
          slot_cost[{slot, p}] = cost.at({c, p});
        }
      }
    }
    data.sets["Slots"] = std::move(slots);
    data.sets["SlotArcs"] = std::move(arcs);
  }
  return data;
}

// s mandatory members, 2s disjoint conflict pairs, and s fresh members each
// requiring one mandatory and one conflict member. Taking the mandatory
// block plus one side of every conflict pair is always a valid roster of
// exactly MinTake members.
DataBinding knapsack_data(int s, Rng& rng) {
  DataBinding data;
  int n = 6 * s;
  auto chars = make_names("C", n);
  data.sets["Characters"] = name_set("Characters", chars);

  SetBinding mandatory{"Mandatory", 1, {}};
  for (int i = 0; i < s; ++i) mandatory.members.push_back({chars[i]});
  data.sets["Mandatory"] = std::move(mandatory);

  SetBinding conflicts{"ConflictPairs", 2, {}};
  for (int i = s; i + 1 < 5 * s; i += 2)
    conflicts.members.push_back({chars[i], chars[i + 1]});
  data.sets["ConflictPairs"] = std::move(conflicts);

  SetBinding requires_set{"RequirePairs", 2, {}};
  for (int j = 0; j < s; ++j) {
    const auto& left = chars[5 * s + j];
    requires_set.members.push_back({left, chars[j]});
    requires_set.members.push_back({left, chars[s + 2 * j]});
  }
  data.sets["RequirePairs"] = std::move(requires_set);

  auto& cost = data.params["CostOf"];
  double total = 0.0;
  for (const auto& c : chars) {
    cost[{c}] = (double)rng.uniform_int(500, 2000);
    total += cost.at({c});
  }
  data.scalars["MaxTake"] = 4.0 * s;
  data.scalars["MinTake"] = 3.0 * s;
  data.scalars["TeamSize"] = (double)n;
  data.scalars["TotalCostAll"] = total;
  return data;
}

// Every aircraft shares one capacity per route and each demand is an exact
// multiple of it, so the coverage rows rescale to a unit network and the
// relaxation solves integrally.
DataBinding aircraft_data(int n_a, int n_r, Rng& rng) {
  DataBinding data;
  auto aircraft = make_names("A", n_a);
  auto routes = make_names("R", n_r);
  data.sets["Aircraft"] = name_set("Aircraft", aircraft);
  data.sets["Routes"] = name_set("Routes", routes);

  SetBinding pairs{"AllocPairs", 2, {}};
  for (const auto& a : aircraft)
    for (const auto& r : routes) pairs.members.push_back({a, r});
  data.sets["AllocPairs"] = std::move(pairs);

  std::vector<long> cap(routes.size()), mult(routes.size());
  for (std::size_t i = 0; i < routes.size(); ++i)
    cap[i] = 25 + 5 * rng.uniform_int(0, 5);
  for (std::size_t i = 0; i < routes.size(); ++i)
    mult[i] = rng.uniform_int(2, 6);

  auto& capacity = data.params["Capacity"];
  auto& cost = data.params["CostOf"];
  for (const auto& a : aircraft)
    for (std::size_t i = 0; i < routes.size(); ++i) {
      capacity[{a, routes[i]}] = (double)cap[i];
      cost[{a, routes[i]}] = (double)rng.uniform_int(200, 500);
    }
  auto& demand = data.params["Demand"];
  long total_mult = 0;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    demand[{routes[i]}] = (double)(mult[i] * cap[i]);
    total_mult += mult[i];
  }
  auto& avail = data.params["Avail"];
  for (const auto& a : aircraft) avail[{a}] = (double)total_mult;
  return data;
}

DataBinding diet_data(int n_f, int n_n, Rng& rng) {
  DataBinding data;
  auto foods = make_names("F", n_f);
  auto nutrients = make_names("N", n_n);
  data.sets["Foods"] = name_set("Foods", foods);
  data.sets["Nutrients"] = name_set("Nutrients", nutrients);

  SetBinding entries{"Entries", 2, {}};
  for (int i = 0; i < n_n; ++i)
    for (int j = 0; j < n_f; ++j)
      if ((i + j) % 5 != 4 || j == i % n_f)
        entries.members.push_back({nutrients[i], foods[j]});
  data.sets["Entries"] = entries;

  auto& cost = data.params["CostOf"];
  for (const auto& f : foods) cost[{f}] = (double)rng.uniform_int(1, 6);
  auto& content = data.params["Content"];
  for (const auto& e : entries.members)
    content[e] = (double)rng.uniform_int(2, 30);

  // Requiring 30% of the attainable intake keeps every row satisfiable
  // inside the purchase cap of ten units per food.
  auto& need = data.params["Need"];
  for (const auto& nu : nutrients) {
    long row = 0;
    for (const auto& e : entries.members)
      if (e[0] == nu) row += (long)content.at(e);
    need[{nu}] = (double)(3 * row);
  }
  return data;
}

// One dedicated pattern per size plus s mixed patterns over consecutive
// size triples; the dedicated patterns alone can cover any demand.
DataBinding cutting_data(int s, Rng& rng) {
  DataBinding data;
  int n_s = 3 * s, n_p = 4 * s;
  auto sizes = make_names("S", n_s);
  auto patterns = make_names("P", n_p);
  data.sets["Sizes"] = name_set("Sizes", sizes);
  data.sets["Patterns"] = name_set("Patterns", patterns);

  SetBinding yields{"Yields", 2, {}};
  auto& yield = data.params["Yield"];
  for (int i = 0; i < n_s; ++i) {
    yields.members.push_back({patterns[i], sizes[i]});
    yield[{patterns[i], sizes[i]}] = (double)rng.uniform_int(1, 4);
  }
  for (int e = 0; e < s; ++e) {
    const auto& p = patterns[n_s + e];
    for (int k = 0; k < 3; ++k) {
      yields.members.push_back({p, sizes[3 * e + k]});
      yield[{p, sizes[3 * e + k]}] = 1.0;
    }
  }
  data.sets["Yields"] = std::move(yields);

  auto& demand = data.params["Demand"];
  for (const auto& sz : sizes) demand[{sz}] = (double)rng.uniform_int(5, 15);
  return data;
}

// A perfect matching down the diagonal plus extra interest edges; the
// optimum is always one car per person.
DataBinding car_data(int s) {
  DataBinding data;
  int n = 3 * s;
  auto people = make_names("P", n);
  auto cars = make_names("C", n);
  data.sets["People"] = name_set("People", people);
  data.sets["Cars"] = name_set("Cars", cars);

  SetBinding pairs{"InterestPairs", 2, {}};
  for (int i = 0; i < n; ++i) pairs.members.push_back({people[i], cars[i]});
  for (int i = 0; i < 2 * s; ++i)
    pairs.members.push_back({people[i], cars[i + 1]});
  data.sets["InterestPairs"] = std::move(pairs);
  return data;
}

DataBinding scaled_data(const std::string& family, int s, Rng& rng) {
  if (family == "transportation") return transport_data(2 * s, 2 * s, rng);
  if (family == "project_assignment") return project_data(2 * s, 2 * s, rng);
  if (family == "knapsack_selection") return knapsack_data(s, rng);
  if (family == "aircraft_assignment")
    return aircraft_data(2 * s, 3 * s, rng);
  if (family == "diet") return diet_data(4 * s, 3 * s, rng);
  if (family == "cutting_stock") return cutting_data(s, rng);
  if (family == "car_selection") return car_data(s);
  throw synth::SynthError(synth::SynthError::Kind::UnknownFamily,
                          "unknown family: " + family);
}

// Builds the instance from one seed and certifies it by solving the
// family's reference formulation, which also supplies the ground truth.
// Returns nothing when the solve does not reach an optimum.
std::optional<ProblemInstance> try_scaled(const ProblemInstance& base, int s,
                                          std::uint64_t seed,
                                          const ScaleConfig& cfg) {
  const auto* spec = synth::find_family(base.family);
  if (!spec)
    throw synth::SynthError(synth::SynthError::Kind::UnknownFamily,
                            "unknown family: " + base.family);
  int s_eff = std::min(s, std::max(1, cfg.b_max_factor));

  ProblemInstance out;
  out.id = base.id + "_x" + std::to_string(s);
  out.question = base.question;
  out.problem_class = base.problem_class;
  out.family = base.family;
  Rng rng(seed);
  out.data = scaled_data(base.family, s_eff, rng);

  const auto& ref = spec->strategies.at(spec->reference_index);
  auto tpl = model::parse_model(ref.model_template);
  auto flat = model::ground(tpl, out.data);
  auto report = solver::solve(flat, cfg.solve);
  if (report.status != solver::SolveStatus::Optimal) return std::nullopt;
  out.ground_truth = report.objective;
  return out;
}

}  // namespace

std::uint64_t derive_seed(const std::string& problem_name, int scale_index,
                          int replicate) {
  return fnv1a64(problem_name + ":" + std::to_string(scale_index) + ":" +
                 std::to_string(replicate));
}

int scaled_dim(int base, int s, int b_max_factor) {
  return std::min(base * s, base * std::max(1, b_max_factor));
}

synth::ProblemInstance scale_generic(const synth::ProblemInstance& base,
                                     int s, std::uint64_t seed,
                                     const ScaleConfig& cfg) {
  if (s < 1) throw std::invalid_argument("scale factor must be >= 1");
  if (auto out = try_scaled(base, s, seed, cfg)) return *out;
  // One reseeded retry before giving up on the cell.
  if (auto out = try_scaled(base, s, seed + 0x9E3779B97F4A7C15ull, cfg))
    return *out;
  throw InfeasibleGenerated("scaled instance for " + base.id + " at x" +
                            std::to_string(s) +
                            " failed its verification solve twice");
}

synth::ProblemInstance scale_transport(const synth::ProblemInstance& base,
                                       int s, std::uint64_t seed,
                                       const ScaleConfig& cfg) {
  if (base.family != "transportation")
    throw std::invalid_argument("scale_transport needs a transportation "
                                "instance, got family: " + base.family);
  return scale_generic(base, s, seed, cfg);
}

}  // namespace sageforge::scalebench
