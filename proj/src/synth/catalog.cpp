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

#include "sageforge/synth/catalog.hpp"

#include <stdexcept>

#include "sageforge/model/ast.hpp"
#include "sageforge/model/flat.hpp"

namespace sageforge::synth {

namespace {

using reward::ProblemClass;

std::vector<FamilySpec> make_specs() {
  std::vector<FamilySpec> specs;

  {
    FamilySpec f;
    f.family = "transportation";
    f.question =
        "Ship goods from origins to destinations at minimum total cost. "
        "Each origin i has Supply[i] units, each destination j needs "
        "Demand[j] units, and shipping is only possible along the links in "
        "Links, where one unit costs Rate[i,j] and at most Limit[i,j] units "
        "may flow. Supplies and demands balance exactly.";
    f.problem_class = ProblemClass::LP;
    f.reference_index = 1;
    f.strategies = {
        {"dense-pairs",
         "route over every ordered city pair and price each pair",
         R"(set CityPairs;
param Rate{(i,j) in CityPairs};
var Ship{(i,j) in CityPairs} continuous >= 0;
minimize cost: sum {(i,j) in CityPairs} Rate[i,j] * Ship[i,j];
subject to move{(i,j) in CityPairs}: Ship[i,j] <= 50;
)",
         "one flow variable per ordered pair, priced from the full rate grid",
         "redundancy-scan-clear all pairs priced and capped"},
        {"link-restricted-flow",
         "route only along declared links with balance rows and caps",
         R"(set Origins;
set Destinations;
set Links;
param Supply{i in Origins};
param Demand{j in Destinations};
param Rate{(i,j) in Links};
param Limit{(i,j) in Links};
var Ship{(i,j) in Links} continuous >= 0;
minimize cost: sum {(i,j) in Links} Rate[i,j] * Ship[i,j];
subject to supply{i in Origins}: sum {(i,j) in Links} Ship[i,j] = Supply[i];
subject to demand{j in Destinations}: sum {(i,j) in Links} Ship[i,j] = Demand[j];
subject to cap{(i,j) in Links}: Ship[i,j] <= Limit[i,j];
)",
         "flow variables only on usable links, with supply and demand "
         "balance rows and one cap row per link",
         "unit-audit-clear supplies equal demands and caps admit a flow"},
        {"aggregated-cost",
         "track per-origin spending in auxiliary variables",
         R"(set Origins;
set Destinations;
set Links;
param Supply{i in Origins};
param Demand{j in Destinations};
param Rate{(i,j) in Links};
param Limit{(i,j) in Links};
var Ship{(i,j) in Links} continuous >= 0;
var Spend{i in Origins} continuous >= 0;
minimize cost: sum {i in Origins} Spend[i];
subject to tally{i in Origins}: sum {(i,j) in Links} Rate[i,j] * Ship[i,j] - Spend[i] = 0;
subject to supply{i in Origins}: sum {(i,j) in Links} Ship[i,j] = Supply[i];
subject to demand{j in Destinations}: sum {(i,j) in Links} Ship[i,j] = Demand[j];
subject to cap{(i,j) in Links}: Ship[i,j] <= Limit[i,j];
)",
         "same link flows plus a spending variable per origin tied by a "
         "tally row, so the objective sums origin subtotals",
         "redundancy-scan-clear tally rows price every link exactly once"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "project_assignment";
    f.question =
        "Assign crew capacity to projects at minimum cost. Crew c can "
        "deliver Supply[c] units of work, project p needs Demand[p] units, "
        "one unit of crew c on project p costs Cost[c,p], and the pairing "
        "is capped at Limit[c,p] units. Total supply equals total demand.";
    f.problem_class = ProblemClass::LP;
    f.reference_index = 0;
    f.strategies = {
        {"continuous-flow",
         "treat work as a divisible flow from crews to projects",
         R"(set Crews;
set Projects;
set Pairs;
param Supply{c in Crews};
param Demand{p in Projects};
param Cost{(c,p) in Pairs};
param Limit{(c,p) in Pairs};
var Assign{(c,p) in Pairs} continuous >= 0;
minimize cost: sum {(c,p) in Pairs} Cost[c,p] * Assign[c,p];
subject to out{c in Crews}: sum {(c,p) in Pairs} Assign[c,p] = Supply[c];
subject to fill{p in Projects}: sum {(c,p) in Pairs} Assign[c,p] = Demand[p];
subject to cap{(c,p) in Pairs}: Assign[c,p] <= Limit[c,p];
)",
         "a continuous assignment variable per crew-project pair with "
         "balance rows on both sides and pair caps",
         "unit-audit-clear crew totals and project totals both balance"},
        {"unit-time-binary",
         "split each crew into unit work slots and assign slots 0-1",
         R"(set Slots;
set Projects;
set SlotArcs;
param Demand{p in Projects};
param SlotCost{(s,p) in SlotArcs};
var Work{(s,p) in SlotArcs} binary;
minimize cost: sum {(s,p) in SlotArcs} SlotCost[s,p] * Work[s,p];
subject to one{s in Slots}: sum {(s,p) in SlotArcs} Work[s,p] = 1;
subject to fill{p in Projects}: sum {(s,p) in SlotArcs} Work[s,p] = Demand[p];
)",
         "each unit of crew capacity becomes a slot that picks exactly one "
         "project, priced at its crew's unit rate",
         "redundancy-scan-clear slot count equals total demand"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "knapsack_selection";
    f.question =
        "Pick a team from Characters at minimum total hiring cost. Between "
        "MinTake and MaxTake members must be picked, everyone in Mandatory "
        "is required, the two members of any pair in ConflictPairs cannot "
        "both be picked, and for (a,b) in RequirePairs picking a requires "
        "picking b. CostOf gives each member's cost; TeamSize and "
        "TotalCostAll summarize the roster.";
    f.problem_class = ProblemClass::MILP;
    f.reference_index = 0;
    f.strategies = {
        {"direct-binary",
         "one take decision per character",
         R"(set Characters;
set Mandatory;
set ConflictPairs;
set RequirePairs;
param CostOf{c in Characters};
param MaxTake;
param MinTake;
var Take{c in Characters} binary;
minimize cost: sum {c in Characters} CostOf[c] * Take[c];
subject to must{m in Mandatory}: Take[m] = 1;
subject to conflict{(a,b) in ConflictPairs}: Take[a] + Take[b] <= 1;
subject to prereq{(a,b) in RequirePairs}: Take[a] - Take[b] <= 0;
subject to max_count: sum {c in Characters} Take[c] <= MaxTake;
subject to min_count: sum {c in Characters} Take[c] >= MinTake;
)",
         "binary take variables with conflict, prerequisite, and team size "
         "rows stated directly",
         "redundancy-scan-clear every roster rule appears exactly once"},
        {"complement-binary",
         "decide who to leave out and charge the full roster minus savings",
         R"(set Characters;
set Mandatory;
set ConflictPairs;
set RequirePairs;
param CostOf{c in Characters};
param MaxTake;
param MinTake;
param TeamSize;
param TotalCostAll;
var Skip{c in Characters} binary;
minimize cost: TotalCostAll - sum {c in Characters} CostOf[c] * Skip[c];
subject to must{m in Mandatory}: Skip[m] = 0;
subject to conflict{(a,b) in ConflictPairs}: Skip[a] + Skip[b] >= 1;
subject to prereq{(a,b) in RequirePairs}: Skip[b] - Skip[a] <= 0;
subject to max_count: sum {c in Characters} Skip[c] >= TeamSize - MaxTake;
subject to min_count: sum {c in Characters} Skip[c] <= TeamSize - MinTake;
)",
         "binary skip variables, with every roster rule rewritten through "
         "take = 1 - skip and the objective offset by the full roster cost",
         "unit-audit-clear complement bounds mirror the take-side counts"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "aircraft_assignment";
    f.question =
        "Assign aircraft to routes at minimum operating cost. At most "
        "Avail[a] aircraft of type a may fly, each aircraft of type a on "
        "route r carries Capacity[a,r] passengers and costs CostOf[a,r], "
        "and route r must get at least Demand[r] seats. Aircraft counts "
        "are whole numbers.";
    f.problem_class = ProblemClass::MILP;
    f.reference_index = 0;
    f.strategies = {
        {"compact-integer",
         "integer aircraft counts with one availability row per type",
         R"(set Aircraft;
set Routes;
set AllocPairs;
param Avail{a in Aircraft};
param Capacity{(a,r) in AllocPairs};
param Demand{r in Routes};
param CostOf{(a,r) in AllocPairs};
var Fly{(a,r) in AllocPairs} integer >= 0;
minimize cost: sum {(a,r) in AllocPairs} CostOf[a,r] * Fly[a,r];
subject to avail{a in Aircraft}: sum {(a,r) in AllocPairs} Fly[a,r] <= Avail[a];
subject to cover{r in Routes}: sum {(a,r) in AllocPairs} Capacity[a,r] * Fly[a,r] >= Demand[r];
)",
         "integer allocation counts, availability rows per type, and seat "
         "coverage rows per route",
         "unit-audit-clear seats are capacity times count on every route"},
        {"redundant-integer",
         "same allocation model restated with explicit sign rows",
         R"(set Aircraft;
set Routes;
set AllocPairs;
param Avail{a in Aircraft};
param Capacity{(a,r) in AllocPairs};
param Demand{r in Routes};
param CostOf{(a,r) in AllocPairs};
var Fly{(a,r) in AllocPairs} integer >= 0;
minimize cost: sum {(a,r) in AllocPairs} CostOf[a,r] * Fly[a,r];
subject to avail{a in Aircraft}: sum {(a,r) in AllocPairs} Fly[a,r] <= Avail[a];
subject to cover{r in Routes}: sum {(a,r) in AllocPairs} Capacity[a,r] * Fly[a,r] >= Demand[r];
subject to nonneg{(a,r) in AllocPairs}: Fly[a,r] >= 0;
)",
         "the compact allocation model plus one explicit nonnegativity row "
         "per allocation variable",
         "redundancy-scan-clear sign rows restate the variable bounds"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "diet";
    f.question =
        "Buy foods at minimum cost while meeting nutrient floors. Food f "
        "costs CostOf[f] per unit and at most 10 units of any food may be "
        "bought; the pairs in Entries give Content[n,f], the amount of "
        "nutrient n in one unit of food f, and each nutrient n needs at "
        "least Need[n] in total.";
    f.problem_class = ProblemClass::LP;
    f.reference_index = 0;
    f.strategies = {
        {"direct-inequality",
         "floor each nutrient with a single inequality",
         R"(set Foods;
set Nutrients;
set Entries;
param CostOf{f in Foods};
param Content{(n,f) in Entries};
param Need{n in Nutrients};
var Buy{f in Foods} continuous >= 0 <= 10;
minimize cost: sum {f in Foods} CostOf[f] * Buy[f];
subject to meet{n in Nutrients}: sum {(n,f) in Entries} Content[n,f] * Buy[f] >= Need[n];
)",
         "purchase variables per food with one floor row per nutrient",
         "unit-audit-clear nutrient totals are content times quantity"},
        {"surplus-equality",
         "book each nutrient's overshoot in a surplus variable",
         R"(set Foods;
set Nutrients;
set Entries;
param CostOf{f in Foods};
param Content{(n,f) in Entries};
param Need{n in Nutrients};
var Buy{f in Foods} continuous >= 0 <= 10;
var Extra{n in Nutrients} continuous >= 0;
minimize cost: sum {f in Foods} CostOf[f] * Buy[f];
subject to meet{n in Nutrients}: sum {(n,f) in Entries} Content[n,f] * Buy[f] - Extra[n] = Need[n];
)",
         "the same purchases with explicit surplus variables turning every "
         "floor into an equality",
         "redundancy-scan-clear surplus variables absorb all overshoot"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "cutting_stock";
    f.question =
        "Cut the fewest stock rolls to fill size orders. Cutting one roll "
        "with pattern p yields Yield[p,s] pieces of size s for the pairs "
        "in Yields, and at least Demand[s] pieces of each size s are "
        "needed. Roll counts are whole numbers.";
    f.problem_class = ProblemClass::MILP;
    f.reference_index = 0;
    f.strategies = {
        {"pattern-integer",
         "count roll uses per cutting pattern",
         R"(set Sizes;
set Patterns;
set Yields;
param Yield{(p,s) in Yields};
param Demand{s in Sizes};
var Cut{p in Patterns} integer >= 0;
minimize rolls: sum {p in Patterns} Cut[p];
subject to meet{s in Sizes}: sum {(p,s) in Yields} Yield[p,s] * Cut[p] >= Demand[s];
)",
         "an integer use count per pattern with one coverage row per size",
         "unit-audit-clear pattern yields cover every size demand"},
        {"surplus-pattern",
         "track overproduction per size explicitly",
         R"(set Sizes;
set Patterns;
set Yields;
param Yield{(p,s) in Yields};
param Demand{s in Sizes};
var Cut{p in Patterns} integer >= 0;
var Over{s in Sizes} continuous >= 0;
minimize rolls: sum {p in Patterns} Cut[p];
subject to meet{s in Sizes}: sum {(p,s) in Yields} Yield[p,s] * Cut[p] - Over[s] = Demand[s];
)",
         "the same pattern counts with a continuous overproduction variable "
         "per size closing each coverage row into an equality",
         "redundancy-scan-clear overproduction is free but unrewarded"}};
    specs.push_back(std::move(f));
  }

  {
    FamilySpec f;
    f.family = "car_selection";
    f.question =
        "Match people to cars to maximize how many people get one. A "
        "person can only take a car they are interested in, per the pairs "
        "in InterestPairs; each person takes at most one car and each car "
        "goes to at most one person.";
    f.problem_class = ProblemClass::MILP;
    f.reference_index = 0;
    f.strategies = {
        {"binary-matching",
         "a 0-1 pick per interest pair",
         R"(set People;
set Cars;
set InterestPairs;
var Pick{(p,c) in InterestPairs} binary;
maximize matched: sum {(p,c) in InterestPairs} Pick[p,c];
subject to person{p in People}: sum {(p,c) in InterestPairs} Pick[p,c] <= 1;
subject to car{c in Cars}: sum {(p,c) in InterestPairs} Pick[p,c] <= 1;
)",
         "binary pick variables on interest pairs with degree rows on both "
         "sides",
         "redundancy-scan-clear every pair appears in exactly two rows"},
        {"flow-relaxation",
         "solve the matching as a continuous unit flow",
         R"(set People;
set Cars;
set InterestPairs;
var Pick{(p,c) in InterestPairs} continuous >= 0 <= 1;
maximize matched: sum {(p,c) in InterestPairs} Pick[p,c];
subject to person{p in People}: sum {(p,c) in InterestPairs} Pick[p,c] <= 1;
subject to car{c in Cars}: sum {(p,c) in InterestPairs} Pick[p,c] <= 1;
)",
         "the same degree-constrained structure with continuous unit "
         "capacities, relying on the matching polytope's integral corners",
         "unit-audit-clear degree rows bound each side by one"}};
    specs.push_back(std::move(f));
  }

  return specs;
}

model::DataBinding transportation_data() {
  return model::data_from_json(R"({
    "sets": {
      "Origins": ["O1", "O2"],
      "Destinations": ["D1", "D2"],
      "Links": [["O1","D1"],["O1","D2"],["O2","D1"],["O2","D2"]],
      "CityPairs": [["O1","O1"],["O1","O2"],["O1","D1"],["O1","D2"],
                    ["O2","O1"],["O2","O2"],["O2","D1"],["O2","D2"],
                    ["D1","O1"],["D1","O2"],["D1","D1"],["D1","D2"],
                    ["D2","O1"],["D2","O2"],["D2","D1"],["D2","D2"]]
    },
    "params": {
      "Supply": {"O1": 20, "O2": 30},
      "Demand": {"D1": 30, "D2": 20},
      "Rate": {"O1,D1": 8, "O1,D2": 6, "O2,D1": 5, "O2,D2": 10},
      "Limit": {"O1,D1": 15, "O1,D2": 25, "O2,D1": 25, "O2,D2": 20}
    }
  })");
}

model::DataBinding project_assignment_data() {
  auto data = model::data_from_json(R"({
    "sets": {
      "Crews": ["C1", "C2"],
      "Projects": ["P1", "P2"],
      "Pairs": [["C1","P1"],["C1","P2"],["C2","P1"],["C2","P2"]]
    },
    "params": {
      "Supply": {"C1": 8, "C2": 7},
      "Demand": {"P1": 5, "P2": 10},
      "Cost": {"C1,P1": 10, "C1,P2": 20, "C2,P1": 15, "C2,P2": 25},
      "Limit": {"C1,P1": 5, "C1,P2": 6, "C2,P1": 4, "C2,P2": 7}
    }
  })");

  // One unit slot per unit of crew supply, fully wired to every project.
  model::SetBinding slots{"Slots", 1, {}};
  model::SetBinding arcs{"SlotArcs", 2, {}};
  auto& slot_cost = data.params["SlotCost"];
  for (const auto& [crew, supply] : data.params.at("Supply")) {
    for (int u = 1; u <= (int)supply; ++u) {
      std::string slot = crew[0] + ("u" + std::to_string(u));
      slots.members.push_back({slot});
      for (const auto& proj : data.sets.at("Projects").members) {
        arcs.members.push_back({slot, proj[0]});
        slot_cost[{slot, proj[0]}] = data.params.at("Cost").at(
            {crew[0], proj[0]});
      }
    }
  }
  data.sets["Slots"] = std::move(slots);
  data.sets["SlotArcs"] = std::move(arcs);
  return data;
}

model::DataBinding knapsack_selection_data() {
  return model::data_from_json(R"({
    "sets": {
      "Characters": ["Harry", "Hermione", "Ron", "Fred", "George", "Ginny"],
      "Mandatory": ["Ginny"],
      "ConflictPairs": [["Harry","Fred"],["Harry","George"]],
      "RequirePairs": [["George","Fred"],["George","Hermione"]]
    },
    "params": {
      "CostOf": {"Harry": 1200, "Hermione": 1650, "Ron": 750,
                 "Fred": 800, "George": 800, "Ginny": 1500}
    },
    "scalars": {"MaxTake": 4, "MinTake": 3, "TeamSize": 6,
                "TotalCostAll": 6700}
  })");
}

model::DataBinding aircraft_assignment_data() {
  return model::data_from_json(R"({
    "sets": {
      "Aircraft": ["A1", "A2"],
      "Routes": ["R1", "R2", "R3"],
      "AllocPairs": [["A1","R1"],["A1","R2"],["A1","R3"],
                     ["A2","R1"],["A2","R2"],["A2","R3"]]
    },
    "params": {
      "Avail": {"A1": 10, "A2": 15},
      "Capacity": {"A1,R1": 30, "A1,R2": 35, "A1,R3": 40,
                   "A2,R1": 30, "A2,R2": 35, "A2,R3": 40},
      "Demand": {"R1": 90, "R2": 70, "R3": 160},
      "CostOf": {"A1,R1": 300, "A1,R2": 400, "A1,R3": 350,
                 "A2,R1": 250, "A2,R2": 450, "A2,R3": 300}
    }
  })");
}

model::DataBinding diet_data() {
  return model::data_from_json(R"({
    "sets": {
      "Foods": ["Bread", "Milk", "Eggs", "Fruit"],
      "Nutrients": ["Protein", "VitaminA", "Calories"],
      "Entries": [["Protein","Bread"],["Protein","Milk"],
                  ["Protein","Eggs"],["Protein","Fruit"],
                  ["VitaminA","Milk"],["VitaminA","Eggs"],
                  ["VitaminA","Fruit"],
                  ["Calories","Bread"],["Calories","Milk"],
                  ["Calories","Eggs"],["Calories","Fruit"]]
    },
    "params": {
      "CostOf": {"Bread": 2, "Milk": 3.5, "Eggs": 4, "Fruit": 3},
      "Content": {"Protein,Bread": 4, "Protein,Milk": 8,
                  "Protein,Eggs": 12, "Protein,Fruit": 2,
                  "VitaminA,Milk": 6, "VitaminA,Eggs": 2,
                  "VitaminA,Fruit": 10,
                  "Calories,Bread": 90, "Calories,Milk": 120,
                  "Calories,Eggs": 160, "Calories,Fruit": 60},
      "Need": {"Protein": 104, "VitaminA": 72, "Calories": 1720}
    }
  })");
}

model::DataBinding cutting_stock_data() {
  return model::data_from_json(R"({
    "sets": {
      "Sizes": ["S1", "S2", "S3"],
      "Patterns": ["P1", "P2", "P3", "P4"],
      "Yields": [["P1","S1"],["P1","S3"],["P2","S2"],
                 ["P3","S1"],["P3","S2"],["P3","S3"],["P4","S3"]]
    },
    "params": {
      "Yield": {"P1,S1": 2, "P1,S3": 1, "P2,S2": 3,
                "P3,S1": 1, "P3,S2": 1, "P3,S3": 1, "P4,S3": 2},
      "Demand": {"S1": 10, "S2": 9, "S3": 7}
    }
  })");
}

model::DataBinding car_selection_data() {
  return model::data_from_json(R"({
    "sets": {
      "People": ["P1", "P2", "P3"],
      "Cars": ["C1", "C2", "C3"],
      "InterestPairs": [["P1","C1"],["P1","C2"],["P2","C1"],
                        ["P3","C2"],["P3","C3"]]
    },
    "params": {}
  })");
}

}  // namespace

const std::vector<FamilySpec>& family_specs() {
  static const std::vector<FamilySpec> specs = make_specs();
  return specs;
}

const FamilySpec* find_family(const std::string& name) {
  for (const auto& f : family_specs())
    if (f.family == name) return &f;
  return nullptr;
}

model::DataBinding base_data(const std::string& family) {
  if (family == "transportation") return transportation_data();
  if (family == "project_assignment") return project_assignment_data();
  if (family == "knapsack_selection") return knapsack_selection_data();
  if (family == "aircraft_assignment") return aircraft_assignment_data();
  if (family == "diet") return diet_data();
  if (family == "cutting_stock") return cutting_stock_data();
  if (family == "car_selection") return car_selection_data();
  throw SynthError(SynthError::Kind::UnknownFamily,
                   "unknown family: " + family);
}

std::vector<ProblemInstance> builtin_catalog() {
  std::vector<ProblemInstance> out;
  for (const auto& spec : family_specs()) {
    ProblemInstance p;
    p.id = spec.family + "_base";
    p.question = spec.question;
    p.data = base_data(spec.family);
    p.problem_class = spec.problem_class;
    p.family = spec.family;

    const StrategySpec& ref = spec.strategies.at(spec.reference_index);
    model::FlatModel flat =
        model::ground(model::parse_model(ref.model_template), p.data);
    solver::SolveReport rep = solver::solve(flat);
    if (rep.status != solver::SolveStatus::Optimal)
      throw std::runtime_error("reference formulation of " + spec.family +
                               " did not solve to optimality");
    p.ground_truth = rep.objective;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace sageforge::synth
