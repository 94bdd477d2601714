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

#include "sageforge/model/ast.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <set>

namespace sageforge::model {

const char* to_string(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::Syntax: return "SyntaxError";
    case ParseError::Kind::DuplicateDecl: return "DuplicateDecl";
    case ParseError::Kind::UnknownIdentifier: return "UnknownIdentifier";
    case ParseError::Kind::NonlinearExpr: return "NonlinearExpr";
  }
  return "?";
}

const char* to_string(VarDomain d) {
  switch (d) {
    case VarDomain::Continuous: return "continuous";
    case VarDomain::Integer: return "integer";
    case VarDomain::Binary: return "binary";
  }
  return "?";
}

const char* to_string(RelSense s) {
  switch (s) {
    case RelSense::Le: return "<=";
    case RelSense::Ge: return ">=";
    case RelSense::Eq: return "=";
  }
  return "?";
}

const SetDecl* ModelTemplate::find_set(const std::string& name) const {
  for (const auto& s : sets)
    if (s.name == name) return &s;
  return nullptr;
}

const ParamDecl* ModelTemplate::find_param(const std::string& name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

const VarDecl* ModelTemplate::find_var(const std::string& name) const {
  for (const auto& v : vars)
    if (v.name == name) return &v;
  return nullptr;
}

namespace {

enum class Tok {
  Id,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Star,
  Plus,
  Minus,
  Le,
  Ge,
  Eq,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  double num = 0.0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(ParseError::Kind k, const std::string& msg, int line,
                       int col) {
  throw ParseError(k, to_string(k) + std::string(": ") + msg + " (line " +
                       std::to_string(line) + ", col " + std::to_string(col) +
                       ")",
                   line, col);
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      t.kind = Tok::Id;
      t.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[j])))
          ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          ++k;
          while (k < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[k])))
            ++k;
          j = k;
        }
      }
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      t.num = std::strtod(t.text.c_str(), nullptr);
      advance(j - i);
      out.push_back(t);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "<=") {
      t.kind = Tok::Le;
      advance(2);
    } else if (two == ">=") {
      t.kind = Tok::Ge;
      advance(2);
    } else {
      switch (c) {
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        case ';': t.kind = Tok::Semi; break;
        case ':': t.kind = Tok::Colon; break;
        case '*': t.kind = Tok::Star; break;
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '=': t.kind = Tok::Eq; break;
        default:
          fail(ParseError::Kind::Syntax,
               std::string("unexpected character '") + c + "'", line, col);
      }
      advance(1);
    }
    out.push_back(t);
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// "free" is reserved for the LP-format bounds keyword so that exported
// names can never collide with it.
const std::set<std::string> kKeywords = {
    "set",      "param",    "var",     "continuous", "integer", "binary",
    "minimize", "maximize", "subject", "to",         "sum",     "in",
    "free"};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  ModelTemplate run() {
    while (!at(Tok::End)) decl();
    resolve();
    return std::move(tpl_);
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(const char* kw) const {
    return cur().kind == Tok::Id && cur().text == kw;
  }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok k, const char* what) {
    if (!at(k))
      fail(ParseError::Kind::Syntax,
           std::string("expected ") + what + " before '" + cur().text + "'",
           cur().line, cur().col);
    return take();
  }
  std::string ident() {
    if (!at(Tok::Id))
      fail(ParseError::Kind::Syntax, "expected identifier", cur().line,
           cur().col);
    if (kKeywords.count(cur().text))
      fail(ParseError::Kind::Syntax,
           "keyword '" + cur().text + "' used as identifier", cur().line,
           cur().col);
    return take().text;
  }

  double signed_number() {
    double sign = 1.0;
    if (at(Tok::Minus)) {
      take();
      sign = -1.0;
    } else if (at(Tok::Plus)) {
      take();
    }
    Token n = expect(Tok::Number, "number");
    return sign * n.num;
  }

  IndexSpec index_spec() {
    IndexSpec spec;
    Token open = expect(Tok::LBrace, "'{'");
    spec.line = open.line;
    spec.col = open.col;
    if (at(Tok::LParen)) {
      take();
      spec.pattern.push_back(ident());
      while (at(Tok::Comma)) {
        take();
        spec.pattern.push_back(ident());
      }
      expect(Tok::RParen, "')'");
    } else {
      spec.pattern.push_back(ident());
    }
    if (!at_kw("in"))
      fail(ParseError::Kind::Syntax, "expected 'in'", cur().line, cur().col);
    take();
    spec.set_name = ident();
    expect(Tok::RBrace, "'}'");
    return spec;
  }

  void decl() {
    if (at_kw("set")) {
      Token kw = take();
      SetDecl d;
      d.name = ident();
      d.line = kw.line;
      expect(Tok::Semi, "';'");
      tpl_.sets.push_back(d);
    } else if (at_kw("param")) {
      Token kw = take();
      ParamDecl d;
      d.name = ident();
      d.line = kw.line;
      if (at(Tok::LBrace)) d.index = index_spec();
      expect(Tok::Semi, "';'");
      tpl_.params.push_back(d);
    } else if (at_kw("var")) {
      Token kw = take();
      VarDecl d;
      d.name = ident();
      d.line = kw.line;
      if (at(Tok::LBrace)) d.index = index_spec();
      if (at_kw("continuous")) {
        take();
      } else if (at_kw("integer")) {
        take();
        d.domain = VarDomain::Integer;
      } else if (at_kw("binary")) {
        take();
        d.domain = VarDomain::Binary;
      }
      while (at(Tok::Ge) || at(Tok::Le)) {
        Token op = take();
        double b = signed_number();
        auto& slot = (op.kind == Tok::Ge) ? d.lower : d.upper;
        if (slot.has_value())
          fail(ParseError::Kind::Syntax, "repeated bound clause", op.line,
               op.col);
        slot = b;
      }
      expect(Tok::Semi, "';'");
      tpl_.vars.push_back(d);
    } else if (at_kw("minimize") || at_kw("maximize")) {
      Token kw = take();
      ObjectiveDecl d;
      d.minimize = (kw.text == "minimize");
      d.name = ident();
      d.line = kw.line;
      expect(Tok::Colon, "':'");
      d.expr = lexpr();
      expect(Tok::Semi, "';'");
      if (tpl_.objective.has_value())
        fail(ParseError::Kind::DuplicateDecl, "objective already declared",
             kw.line, kw.col);
      tpl_.objective = std::move(d);
    } else if (at_kw("subject")) {
      Token kw = take();
      if (!at_kw("to"))
        fail(ParseError::Kind::Syntax, "expected 'to'", cur().line, cur().col);
      take();
      ConstraintDecl d;
      d.name = ident();
      d.line = kw.line;
      if (at(Tok::LBrace)) d.index = index_spec();
      expect(Tok::Colon, "':'");
      d.lhs = lexpr();
      if (at(Tok::Le)) {
        d.sense = RelSense::Le;
      } else if (at(Tok::Ge)) {
        d.sense = RelSense::Ge;
      } else if (at(Tok::Eq)) {
        d.sense = RelSense::Eq;
      } else {
        fail(ParseError::Kind::Syntax, "expected '<=', '>=' or '='",
             cur().line, cur().col);
      }
      take();
      d.rhs = lexpr();
      expect(Tok::Semi, "';'");
      tpl_.constraints.push_back(std::move(d));
    } else {
      fail(ParseError::Kind::Syntax,
           "expected declaration before '" + cur().text + "'", cur().line,
           cur().col);
    }
  }

  LinearExpr lexpr() {
    LinearExpr e;
    double sign = 1.0;
    if (at(Tok::Minus)) {
      take();
      sign = -1.0;
    } else if (at(Tok::Plus)) {
      take();
    }
    e.addends.push_back(addend(sign));
    while (at(Tok::Plus) || at(Tok::Minus)) {
      sign = at(Tok::Minus) ? -1.0 : 1.0;
      take();
      e.addends.push_back(addend(sign));
    }
    return e;
  }

  Addend addend(double sign) {
    Addend a;
    if (at_kw("sum")) {
      take();
      auto s = std::make_shared<SumExpr>();
      s->index = index_spec();
      s->body = term(sign);
      a.sum = std::move(s);
    } else {
      a.term = term(sign);
    }
    return a;
  }

  // Factors are split into params/var during resolve(); until then every
  // named factor sits in `params`.
  Term term(double sign) {
    Term t;
    t.coef = sign;
    t.line = cur().line;
    t.col = cur().col;
    factor(t);
    while (at(Tok::Star)) {
      take();
      factor(t);
    }
    return t;
  }

  void factor(Term& t) {
    if (at(Tok::Number)) {
      t.coef *= take().num;
      return;
    }
    Ref r;
    r.line = cur().line;
    r.col = cur().col;
    r.name = ident();
    if (at(Tok::LBracket)) {
      take();
      r.args.push_back(ident());
      while (at(Tok::Comma)) {
        take();
        r.args.push_back(ident());
      }
      expect(Tok::RBracket, "']'");
    }
    t.params.push_back(std::move(r));
  }

  // --- post-parse resolution ---------------------------------------------

  void resolve() {
    for (const auto& s : tpl_.sets) declare(s.name, s.line);
    for (const auto& p : tpl_.params) declare(p.name, p.line);
    for (const auto& v : tpl_.vars) declare(v.name, v.line);
    std::set<std::string> labels;
    if (tpl_.objective && !labels.insert(tpl_.objective->name).second)
      fail(ParseError::Kind::DuplicateDecl,
           "duplicate label '" + tpl_.objective->name + "'",
           tpl_.objective->line, 1);
    for (const auto& c : tpl_.constraints)
      if (!labels.insert(c.name).second)
        fail(ParseError::Kind::DuplicateDecl,
             "duplicate label '" + c.name + "'", c.line, 1);

    for (auto& p : tpl_.params)
      if (p.index) check_index(*p.index);
    for (auto& v : tpl_.vars)
      if (v.index) check_index(*v.index);
    if (tpl_.objective) check_expr(tpl_.objective->expr, {});
    for (auto& c : tpl_.constraints) {
      std::set<std::string> scope;
      if (c.index) {
        check_index(*c.index);
        scope.insert(c.index->pattern.begin(), c.index->pattern.end());
      }
      check_expr(c.lhs, scope);
      check_expr(c.rhs, scope);
    }
  }

  void declare(const std::string& name, int line) {
    if (!names_.insert(name).second)
      fail(ParseError::Kind::DuplicateDecl, "'" + name + "' declared twice",
           line, 1);
  }

  void check_index(const IndexSpec& spec) {
    if (!tpl_.find_set(spec.set_name))
      fail(ParseError::Kind::UnknownIdentifier,
           "set '" + spec.set_name + "' is not declared", spec.line, spec.col);
    for (const auto& comp : spec.pattern)
      if (names_.count(comp))
        fail(ParseError::Kind::DuplicateDecl,
             "index variable '" + comp + "' collides with a declaration",
             spec.line, spec.col);
    auto [it, inserted] =
        set_arity_.try_emplace(spec.set_name, (int)spec.pattern.size());
    if (!inserted && it->second != (int)spec.pattern.size())
      fail(ParseError::Kind::Syntax,
           "set '" + spec.set_name + "' used with conflicting arities",
           spec.line, spec.col);
  }

  void check_expr(LinearExpr& e, const std::set<std::string>& scope) {
    for (auto& a : e.addends) {
      if (a.sum) {
        check_index(a.sum->index);
        std::set<std::string> inner = scope;
        inner.insert(a.sum->index.pattern.begin(),
                     a.sum->index.pattern.end());
        check_term(a.sum->body, inner);
      } else {
        check_term(*a.term, scope);
      }
    }
  }

  void check_term(Term& t, const std::set<std::string>& scope) {
    std::vector<Ref> params;
    for (auto& r : t.params) {
      const bool is_var = tpl_.find_var(r.name) != nullptr;
      const bool is_param = tpl_.find_param(r.name) != nullptr;
      if (is_var) {
        if (t.var.has_value())
          fail(ParseError::Kind::NonlinearExpr,
               "product of variables '" + t.var->name + "' and '" + r.name +
                   "'",
               r.line, r.col);
        check_ref_arity(r, tpl_.find_var(r.name)->index);
        t.var = r;
      } else if (is_param) {
        check_ref_arity(r, tpl_.find_param(r.name)->index);
        params.push_back(r);
      } else if (scope.count(r.name) && r.args.empty()) {
        fail(ParseError::Kind::Syntax,
             "index variable '" + r.name + "' used as a factor", r.line,
             r.col);
      } else {
        fail(ParseError::Kind::UnknownIdentifier,
             "'" + r.name + "' is not declared", r.line, r.col);
      }
    }
    t.params = std::move(params);
  }

  void check_ref_arity(const Ref& r, const std::optional<IndexSpec>& idx) {
    size_t want = idx ? idx->pattern.size() : 0;
    if (r.args.size() != want)
      fail(ParseError::Kind::Syntax,
           "'" + r.name + "' expects " + std::to_string(want) +
               " subscript(s), got " + std::to_string(r.args.size()),
           r.line, r.col);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  ModelTemplate tpl_;
  std::set<std::string> names_;
  std::map<std::string, int> set_arity_;
};

}  // namespace

ModelTemplate parse_model(const std::string& source) {
  return Parser(source).run();
}

}  // namespace sageforge::model
