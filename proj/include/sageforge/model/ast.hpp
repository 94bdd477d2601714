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

#ifndef SAGEFORGE_MODEL_AST_HPP
#define SAGEFORGE_MODEL_AST_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sageforge::model {

struct ParseError : std::runtime_error {
  enum class Kind { Syntax, DuplicateDecl, UnknownIdentifier, NonlinearExpr };

  ParseError(Kind k, std::string msg, int l, int c)
      : std::runtime_error(std::move(msg)), kind(k), line(l), col(c) {}

  Kind kind;
  int line;
  int col;
};

const char* to_string(ParseError::Kind k);

enum class VarDomain { Continuous, Integer, Binary };
enum class RelSense { Le, Ge, Eq };

const char* to_string(VarDomain d);
const char* to_string(RelSense s);

/// `{pattern in SetName}`. Pattern components are index variables; a
/// component that repeats an enclosing binding acts as an equality filter
/// during grounding instead of introducing a new variable.
struct IndexSpec {
  std::vector<std::string> pattern;
  std::string set_name;
  int line = 0;
  int col = 0;
};

/// Reference to a parameter or variable, possibly indexed. Each argument is
/// either an index variable in scope or a literal set-member symbol; which
/// one is decided at grounding time (index variables win).
struct Ref {
  std::string name;
  std::vector<std::string> args;
  int line = 0;
  int col = 0;
};

/// One additive term: numeric coefficient times zero or more parameter
/// factors times at most one variable factor (linearity).
struct Term {
  double coef = 1.0;
  std::vector<Ref> params;
  std::optional<Ref> var;
  int line = 0;
  int col = 0;
};

struct SumExpr;

struct Addend {
  // Exactly one of `term` / `sum` is set.
  std::optional<Term> term;
  std::shared_ptr<SumExpr> sum;
};

struct LinearExpr {
  std::vector<Addend> addends;
};

struct SumExpr {
  IndexSpec index;
  Term body;
};

struct SetDecl {
  std::string name;
  int line = 0;
};

struct ParamDecl {
  std::string name;
  std::optional<IndexSpec> index;
  int line = 0;
};

struct VarDecl {
  std::string name;
  std::optional<IndexSpec> index;
  VarDomain domain = VarDomain::Continuous;
  std::optional<double> lower;
  std::optional<double> upper;
  int line = 0;
};

struct ObjectiveDecl {
  bool minimize = true;
  std::string name;
  LinearExpr expr;
  int line = 0;
};

struct ConstraintDecl {
  std::string name;
  std::optional<IndexSpec> index;
  LinearExpr lhs;
  RelSense sense = RelSense::Le;
  LinearExpr rhs;
  int line = 0;
};

struct ModelTemplate {
  std::vector<SetDecl> sets;
  std::vector<ParamDecl> params;
  std::vector<VarDecl> vars;
  std::optional<ObjectiveDecl> objective;
  std::vector<ConstraintDecl> constraints;

  const SetDecl* find_set(const std::string& name) const;
  const ParamDecl* find_param(const std::string& name) const;
  const VarDecl* find_var(const std::string& name) const;
};

/// Parses model source into a resolved template. Throws ParseError.
ModelTemplate parse_model(const std::string& source);

}  // namespace sageforge::model

#endif  // SAGEFORGE_MODEL_AST_HPP
