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

#include "sageforge/model/flat.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace sageforge::model {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kind_name(GroundError::Kind k) {
  switch (k) {
    case GroundError::Kind::MissingSet: return "MissingSet";
    case GroundError::Kind::MissingParamEntry: return "MissingParamEntry";
    case GroundError::Kind::MissingVarInstance: return "MissingVarInstance";
    case GroundError::Kind::EmptyModel: return "EmptyModel";
    case GroundError::Kind::InvalidBounds: return "InvalidBounds";
    case GroundError::Kind::InfeasibleConstant: return "InfeasibleConstant";
  }
  return "?";
}

[[noreturn]] void fail(GroundError::Kind k, const std::string& detail,
                       const std::string& subject = {}) {
  throw GroundError(k, std::string(kind_name(k)) + ": " + detail, subject);
}

std::string instance_name(const std::string& family, const Tuple& member) {
  if (member.empty()) return family;
  return family + "(" + tuple_key(member) + ")";
}

std::string ref_key(const std::string& name, const Tuple& args) {
  return name + "[" + tuple_key(args) + "]";
}

/// Index-variable environment; later bindings shadow nothing because parse
/// already rejected collisions, so a plain stack of (name, value) works.
struct Env {
  std::vector<std::pair<std::string, std::string>> binds;

  const std::string* find(const std::string& name) const {
    for (auto it = binds.rbegin(); it != binds.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
};

class Grounder {
 public:
  Grounder(const ModelTemplate& tpl, const DataBinding& data)
      : tpl_(tpl), data_(data) {}

  FlatModel run() {
    validate_data(data_);
    check_sets();
    build_vars();
    if (model_.vars.empty())
      fail(GroundError::Kind::EmptyModel, "model has no variable instances");
    build_objective();
    build_constraints();
    return std::move(model_);
  }

 private:
  void check_sets() {
    for (const auto& s : tpl_.sets) {
      auto it = data_.sets.find(s.name);
      if (it == data_.sets.end())
        fail(GroundError::Kind::MissingSet,
             "set '" + s.name + "' is not bound", s.name);
    }
    // Arity agreement between template usage and bound data.
    auto check = [&](const IndexSpec& spec) {
      const auto& set = data_.sets.at(spec.set_name);
      if (!set.members.empty() && (int)spec.pattern.size() != set.arity)
        fail(GroundError::Kind::MissingSet,
             "set '" + spec.set_name + "' bound with arity " +
                 std::to_string(set.arity) + " but used with arity " +
                 std::to_string(spec.pattern.size()),
             spec.set_name);
    };
    for (const auto& p : tpl_.params)
      if (p.index) check(*p.index);
    for (const auto& v : tpl_.vars)
      if (v.index) check(*v.index);
    for (const auto& c : tpl_.constraints)
      if (c.index) check(*c.index);
    auto walk = [&](const LinearExpr& e) {
      for (const auto& a : e.addends)
        if (a.sum) check(a.sum->index);
    };
    if (tpl_.objective) walk(tpl_.objective->expr);
    for (const auto& c : tpl_.constraints) {
      walk(c.lhs);
      walk(c.rhs);
    }
  }

  /// Calls fn(extended env) for every member of the spec's set that unifies
  /// with the pattern: fresh components bind, already-bound components must
  /// match the member value.
  template <typename Fn>
  void expand(const IndexSpec& spec, const Env& env, Fn&& fn) {
    const auto& set = data_.sets.at(spec.set_name);
    for (const auto& member : set.members) {
      Env ext = env;
      bool ok = true;
      for (size_t k = 0; k < spec.pattern.size(); ++k) {
        const std::string& comp = spec.pattern[k];
        if (const std::string* bound = ext.find(comp)) {
          if (*bound != member[k]) {
            ok = false;
            break;
          }
        } else {
          ext.binds.emplace_back(comp, member[k]);
        }
      }
      if (ok) fn(ext, member);
    }
  }

  void build_vars() {
    std::vector<const VarDecl*> families;
    for (const auto& v : tpl_.vars) families.push_back(&v);
    std::sort(families.begin(), families.end(),
              [](const VarDecl* a, const VarDecl* b) {
                return a->name < b->name;
              });
    for (const VarDecl* fam : families) {
      double lo = fam->lower.value_or(-kInf);
      double hi = fam->upper.value_or(kInf);
      if (fam->domain == VarDomain::Binary) {
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
      }
      if (lo > hi)
        fail(GroundError::Kind::InvalidBounds,
             "variable '" + fam->name + "' has lower bound above upper bound",
             fam->name);
      auto add = [&](const Tuple& member) {
        int idx = (int)model_.vars.size();
        model_.vars.push_back(
            {instance_name(fam->name, member), fam->domain, lo, hi});
        var_index_[fam->name][member] = idx;
      };
      if (fam->index) {
        expand(*fam->index, Env{},
               [&](const Env&, const Tuple& member) { add(member); });
      } else {
        add({});
      }
    }
  }

  double param_value(const Ref& r, const Env& env) {
    if (r.args.empty()) {
      auto it = data_.scalars.find(r.name);
      if (it == data_.scalars.end())
        fail(GroundError::Kind::MissingParamEntry,
             "no value for '" + r.name + "'", r.name);
      return it->second;
    }
    Tuple key = eval_args(r.args, env);
    auto table = data_.params.find(r.name);
    if (table != data_.params.end()) {
      auto it = table->second.find(key);
      if (it != table->second.end()) return it->second;
    }
    fail(GroundError::Kind::MissingParamEntry,
         "no value for '" + ref_key(r.name, key) + "'", ref_key(r.name, key));
  }

  Tuple eval_args(const std::vector<std::string>& args, const Env& env) {
    Tuple out;
    for (const auto& a : args) {
      if (const std::string* bound = env.find(a))
        out.push_back(*bound);
      else
        out.push_back(a);  // literal set-member symbol
    }
    return out;
  }

  int var_instance(const Ref& r, const Env& env) {
    Tuple key = eval_args(r.args, env);
    auto fam = var_index_.find(r.name);
    if (fam != var_index_.end()) {
      auto it = fam->second.find(key);
      if (it != fam->second.end()) return it->second;
    }
    fail(GroundError::Kind::MissingVarInstance,
         "no variable instance '" + ref_key(r.name, key) + "'",
         ref_key(r.name, key));
  }

  void eval_term(const Term& t, const Env& env, std::map<int, double>& coefs,
                 double& constant) {
    double value = t.coef;
    for (const auto& p : t.params) value *= param_value(p, env);
    if (t.var.has_value())
      coefs[var_instance(*t.var, env)] += value;
    else
      constant += value;
  }

  void eval_expr(const LinearExpr& e, const Env& env,
                 std::map<int, double>& coefs, double& constant) {
    for (const auto& a : e.addends) {
      if (a.sum) {
        expand(a.sum->index, env, [&](const Env& inner, const Tuple&) {
          eval_term(a.sum->body, inner, coefs, constant);
        });
      } else {
        eval_term(*a.term, env, coefs, constant);
      }
    }
  }

  static CoefList to_list(const std::map<int, double>& coefs) {
    CoefList out;
    for (const auto& [idx, value] : coefs)
      if (value != 0.0) out.emplace_back(idx, value);
    return out;
  }

  void build_objective() {
    if (!tpl_.objective) return;
    std::map<int, double> coefs;
    double constant = 0.0;
    eval_expr(tpl_.objective->expr, Env{}, coefs, constant);
    model_.minimize = tpl_.objective->minimize;
    model_.objective = to_list(coefs);
    model_.objective_constant = constant;
  }

  void build_constraints() {
    std::vector<const ConstraintDecl*> families;
    for (const auto& c : tpl_.constraints) families.push_back(&c);
    std::sort(families.begin(), families.end(),
              [](const ConstraintDecl* a, const ConstraintDecl* b) {
                return a->name < b->name;
              });
    for (const ConstraintDecl* fam : families) {
      auto emit = [&](const Env& env, const Tuple& member) {
        std::map<int, double> coefs;
        double lhs_const = 0.0, rhs_const = 0.0;
        eval_expr(fam->lhs, env, coefs, lhs_const);
        std::map<int, double> rhs_coefs;
        eval_expr(fam->rhs, env, rhs_coefs, rhs_const);
        for (const auto& [idx, value] : rhs_coefs) coefs[idx] -= value;
        double rhs = rhs_const - lhs_const;
        CoefList list = to_list(coefs);
        if (list.empty()) {
          bool holds = fam->sense == RelSense::Le   ? 0.0 <= rhs
                       : fam->sense == RelSense::Ge ? 0.0 >= rhs
                                                    : rhs == 0.0;
          if (!holds)
            fail(GroundError::Kind::InfeasibleConstant,
                 "constraint '" + instance_name(fam->name, member) +
                     "' reduces to an unsatisfiable constant relation",
                 instance_name(fam->name, member));
          return;  // trivially true rows are not stored
        }
        model_.constraints.push_back({instance_name(fam->name, member),
                                      std::move(list), fam->sense, rhs});
      };
      if (fam->index) {
        expand(*fam->index, Env{}, emit);
      } else {
        emit(Env{}, {});
      }
    }
  }

  const ModelTemplate& tpl_;
  const DataBinding& data_;
  FlatModel model_;
  std::map<std::string, std::map<Tuple, int>> var_index_;
};

}  // namespace

const char* to_string(GroundError::Kind k) { return kind_name(k); }

int FlatModel::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return (int)i;
  return -1;
}

FlatModel ground(const ModelTemplate& tpl, const DataBinding& data) {
  return Grounder(tpl, data).run();
}

StructStats struct_stats(const FlatModel& m) {
  StructStats s;
  s.num_vars = (int)m.vars.size();
  s.num_constraints = (int)m.constraints.size();
  for (const auto& c : m.constraints) s.nnz += (int)c.coefs.size();
  return s;
}

}  // namespace sageforge::model
