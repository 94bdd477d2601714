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

#include "sageforge/model/lpfile.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "sageforge/util/numfmt.hpp"

namespace sageforge::model {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Term stream: ["-"] term (("+"|"-") term)*, all tokens space separated.
// A term is `coef name`, a bare `name` when |coef| == 1, or a bare number
// for a constant contribution.
void render_terms(std::ostringstream& out, const CoefList& coefs,
                  double constant, const std::vector<FlatVar>& vars) {
  bool first = true;
  auto sign_prefix = [&](double v) {
    if (first) {
      if (v < 0) out << "- ";
      first = false;
    } else {
      out << (v < 0 ? " - " : " + ");
    }
  };
  for (const auto& [idx, coef] : coefs) {
    sign_prefix(coef);
    double mag = std::fabs(coef);
    if (mag != 1.0) out << format_shortest(mag) << ' ';
    out << vars[idx].name;
  }
  if (constant != 0.0 || coefs.empty()) {
    sign_prefix(constant);
    out << format_shortest(std::fabs(constant));
  }
}

struct LpToken {
  enum Kind { Name, Number, Plus, Minus, Le, Ge, Eq, Colon, End } kind;
  std::string text;
  double num = 0.0;
};

class LineLexer {
 public:
  LineLexer(const std::string& line, int lineno)
      : line_(line), lineno_(lineno) {}

  LpToken next() {
    while (pos_ < line_.size() &&
           std::isspace(static_cast<unsigned char>(line_[pos_])))
      ++pos_;
    if (pos_ >= line_.size()) return {LpToken::End, "", 0.0};
    char c = line_[pos_];
    if (c == '+') {
      ++pos_;
      return {LpToken::Plus, "+", 0.0};
    }
    if (c == ':') {
      ++pos_;
      return {LpToken::Colon, ":", 0.0};
    }
    if (c == '<' || c == '>') {
      if (pos_ + 1 >= line_.size() || line_[pos_ + 1] != '=')
        throw LpFormatError("expected '=' after inequality sign on line " +
                                std::to_string(lineno_),
                            lineno_);
      pos_ += 2;
      return {c == '<' ? LpToken::Le : LpToken::Ge, "", 0.0};
    }
    if (c == '=') {
      ++pos_;
      return {LpToken::Eq, "=", 0.0};
    }
    if (c == '-' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-' && !(pos_ + 1 < line_.size() &&
                        (std::isdigit(static_cast<unsigned char>(
                             line_[pos_ + 1])) ||
                         line_[pos_ + 1] == '.'))) {
        ++pos_;
        return {LpToken::Minus, "-", 0.0};
      }
      const char* start = line_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start)
        throw LpFormatError(
            "bad number on line " + std::to_string(lineno_), lineno_);
      pos_ += (size_t)(end - start);
      return {LpToken::Number, std::string(start, (size_t)(end - start)), v};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = pos_;
      while (j < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[j])) ||
              line_[j] == '_' || line_[j] == '.'))
        ++j;
      if (j < line_.size() && line_[j] == '(') {
        while (j < line_.size() && line_[j] != ')') ++j;
        if (j >= line_.size())
          throw LpFormatError(
              "unbalanced '(' in name on line " + std::to_string(lineno_),
              lineno_);
        ++j;
      }
      LpToken t{LpToken::Name, line_.substr(pos_, j - pos_), 0.0};
      pos_ = j;
      return t;
    }
    throw LpFormatError("unexpected character '" + std::string(1, c) +
                            "' on line " + std::to_string(lineno_),
                        lineno_);
  }

 private:
  const std::string& line_;
  size_t pos_ = 0;
  int lineno_;
};

struct ParsedExpr {
  std::vector<std::pair<std::string, double>> terms;  // (var name, coef)
  double constant = 0.0;
};

// Parses a term stream until a sense token or end of line. Returns the
// stopping token.
LpToken parse_terms(LineLexer& lex, ParsedExpr& out, int lineno) {
  double sign = 1.0;
  bool have_sign = false;
  for (;;) {
    LpToken t = lex.next();
    switch (t.kind) {
      case LpToken::Plus:
        sign = 1.0;
        have_sign = true;
        break;
      case LpToken::Minus:
        sign = -1.0;
        have_sign = true;
        break;
      case LpToken::Number: {
        LpToken after = lex.next();
        if (after.kind == LpToken::Name) {
          out.terms.emplace_back(after.text, sign * t.num);
        } else if (after.kind == LpToken::End || after.kind == LpToken::Le ||
                   after.kind == LpToken::Ge || after.kind == LpToken::Eq ||
                   after.kind == LpToken::Plus ||
                   after.kind == LpToken::Minus) {
          out.constant += sign * t.num;
          sign = 1.0;
          have_sign = false;
          if (after.kind == LpToken::Plus) {
            sign = 1.0;
            have_sign = true;
            continue;
          }
          if (after.kind == LpToken::Minus) {
            sign = -1.0;
            have_sign = true;
            continue;
          }
          return after;
        } else {
          throw LpFormatError(
              "unexpected token after number on line " +
                  std::to_string(lineno),
              lineno);
        }
        sign = 1.0;
        have_sign = false;
        break;
      }
      case LpToken::Name:
        out.terms.emplace_back(t.text, sign);
        sign = 1.0;
        have_sign = false;
        break;
      case LpToken::End:
      case LpToken::Le:
      case LpToken::Ge:
      case LpToken::Eq:
        if (have_sign)
          throw LpFormatError(
              "dangling sign on line " + std::to_string(lineno), lineno);
        return t;
      default:
        throw LpFormatError(
            "unexpected token on line " + std::to_string(lineno), lineno);
    }
  }
}

struct RawSection {
  std::string header;
  std::vector<std::pair<int, std::string>> lines;  // (lineno, content)
};

}  // namespace

std::string export_lp(const FlatModel& m) {
  std::ostringstream out;
  out << (m.minimize ? "Minimize" : "Maximize") << '\n';
  out << " obj: ";
  render_terms(out, m.objective, m.objective_constant, m.vars);
  out << '\n';
  out << "Subject To\n";
  for (const auto& c : m.constraints) {
    out << ' ' << c.name << ": ";
    render_terms(out, c.coefs, 0.0, m.vars);
    out << ' ' << to_string(c.sense) << ' ' << format_shortest(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : m.vars) {
    out << ' ';
    if (v.lower == -kInf && v.upper == kInf) {
      out << v.name << " free";
    } else if (v.lower == v.upper) {
      out << v.name << " = " << format_shortest(v.lower);
    } else if (v.upper == kInf) {
      out << v.name << " >= " << format_shortest(v.lower);
    } else if (v.lower == -kInf) {
      out << v.name << " <= " << format_shortest(v.upper);
    } else {
      out << format_shortest(v.lower) << " <= " << v.name << " <= "
          << format_shortest(v.upper);
    }
    out << '\n';
  }
  bool any_integer = false, any_binary = false;
  for (const auto& v : m.vars) {
    any_integer |= v.domain == VarDomain::Integer;
    any_binary |= v.domain == VarDomain::Binary;
  }
  if (any_integer) {
    out << "Generals\n";
    for (const auto& v : m.vars)
      if (v.domain == VarDomain::Integer) out << ' ' << v.name << '\n';
  }
  if (any_binary) {
    out << "Binaries\n";
    for (const auto& v : m.vars)
      if (v.domain == VarDomain::Binary) out << ' ' << v.name << '\n';
  }
  out << "End\n";
  return out.str();
}

FlatModel import_lp(const std::string& text) {
  if (text.empty()) throw LpFormatError("empty LP input", 0);

  std::vector<RawSection> sections;
  {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_end = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        if (line == "Minimize" || line == "Maximize" ||
            line == "Subject To" || line == "Bounds" || line == "Generals" ||
            line == "Binaries" || line == "End") {
          if (line == "End") {
            saw_end = true;
            break;
          }
          sections.push_back({line, {}});
        } else {
          throw LpFormatError("unknown section header '" + line +
                                  "' on line " + std::to_string(lineno),
                              lineno);
        }
      } else {
        if (sections.empty())
          throw LpFormatError("content before first section header", lineno);
        sections.back().lines.emplace_back(lineno, line);
      }
    }
    if (!saw_end) throw LpFormatError("missing End line", lineno);
  }

  const RawSection* objective = nullptr;
  const RawSection* subject_to = nullptr;
  const RawSection* bounds = nullptr;
  const RawSection* generals = nullptr;
  const RawSection* binaries = nullptr;
  bool minimize = true;
  for (const auto& s : sections) {
    auto assign = [&](const RawSection*& slot) {
      if (slot)
        throw LpFormatError("duplicate section '" + s.header + "'", 0);
      slot = &s;
    };
    if (s.header == "Minimize" || s.header == "Maximize") {
      assign(objective);
      minimize = s.header == "Minimize";
    } else if (s.header == "Subject To") {
      assign(subject_to);
    } else if (s.header == "Bounds") {
      assign(bounds);
    } else if (s.header == "Generals") {
      assign(generals);
    } else {
      assign(binaries);
    }
  }
  if (!objective) throw LpFormatError("missing objective section", 0);

  FlatModel m;
  m.minimize = minimize;
  std::map<std::string, int> index;
  auto var_of = [&](const std::string& name, bool create) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (!create)
      throw LpFormatError("unknown variable '" + name + "'", 0);
    int idx = (int)m.vars.size();
    // LP-format default bounds for variables external files never mention
    // in Bounds.
    m.vars.push_back({name, VarDomain::Continuous, 0.0, kInf});
    index.emplace(name, idx);
    return idx;
  };

  // Bounds first: its line order defines variable storage order, which is
  // what makes importing our own exports reproduce the model exactly.
  if (bounds) {
    for (const auto& [lineno, line] : bounds->lines) {
      LineLexer lex(line, lineno);
      LpToken first = lex.next();
      if (first.kind == LpToken::Number) {
        // lo <= name <= hi
        if (lex.next().kind != LpToken::Le)
          throw LpFormatError(
              "expected '<=' in bounds on line " + std::to_string(lineno),
              lineno);
        LpToken name = lex.next();
        if (name.kind != LpToken::Name)
          throw LpFormatError(
              "expected name in bounds on line " + std::to_string(lineno),
              lineno);
        if (lex.next().kind != LpToken::Le)
          throw LpFormatError(
              "expected '<=' in bounds on line " + std::to_string(lineno),
              lineno);
        LpToken hi = lex.next();
        if (hi.kind != LpToken::Number)
          throw LpFormatError(
              "expected number in bounds on line " + std::to_string(lineno),
              lineno);
        int idx = var_of(name.text, true);
        m.vars[idx].lower = first.num;
        m.vars[idx].upper = hi.num;
      } else if (first.kind == LpToken::Name) {
        LpToken op = lex.next();
        if (op.kind == LpToken::Name && op.text == "free") {
          int idx = var_of(first.text, true);
          m.vars[idx].lower = -kInf;
          m.vars[idx].upper = kInf;
        } else if (op.kind == LpToken::Ge || op.kind == LpToken::Le ||
                   op.kind == LpToken::Eq) {
          LpToken num = lex.next();
          if (num.kind != LpToken::Number)
            throw LpFormatError(
                "expected number in bounds on line " + std::to_string(lineno),
                lineno);
          int idx = var_of(first.text, true);
          if (op.kind == LpToken::Ge) {
            m.vars[idx].lower = num.num;
            m.vars[idx].upper = kInf;
          } else if (op.kind == LpToken::Le) {
            m.vars[idx].lower = -kInf;
            m.vars[idx].upper = num.num;
          } else {
            m.vars[idx].lower = num.num;
            m.vars[idx].upper = num.num;
          }
        } else {
          throw LpFormatError(
              "bad bounds line " + std::to_string(lineno), lineno);
        }
      } else {
        throw LpFormatError("bad bounds line " + std::to_string(lineno),
                            lineno);
      }
      if (lex.next().kind != LpToken::End)
        throw LpFormatError(
            "trailing tokens in bounds on line " + std::to_string(lineno),
            lineno);
    }
  }

  for (const RawSection* domain_section : {generals, binaries}) {
    if (!domain_section) continue;
    VarDomain dom = domain_section == generals ? VarDomain::Integer
                                               : VarDomain::Binary;
    for (const auto& [lineno, line] : domain_section->lines) {
      LineLexer lex(line, lineno);
      for (;;) {
        LpToken t = lex.next();
        if (t.kind == LpToken::End) break;
        if (t.kind != LpToken::Name)
          throw LpFormatError(
              "expected variable name on line " + std::to_string(lineno),
              lineno);
        auto it = index.find(t.text);
        if (it == index.end()) {
          int idx = var_of(t.text, true);
          m.vars[idx].lower = 0.0;
          m.vars[idx].upper = dom == VarDomain::Binary ? 1.0 : kInf;
          m.vars[idx].domain = dom;
        } else {
          m.vars[it->second].domain = dom;
        }
      }
    }
  }

  auto to_coefs = [&](const ParsedExpr& e) {
    std::map<int, double> acc;
    for (const auto& [name, coef] : e.terms) acc[var_of(name, true)] += coef;
    CoefList out;
    for (const auto& [idx, value] : acc)
      if (value != 0.0) out.emplace_back(idx, value);
    return out;
  };

  {
    if (objective->lines.size() != 1)
      throw LpFormatError("objective must be a single line", 0);
    const auto& [lineno, line] = objective->lines.front();
    LineLexer lex(line, lineno);
    LpToken label = lex.next();
    if (label.kind != LpToken::Name || lex.next().kind != LpToken::Colon)
      throw LpFormatError(
          "expected 'label:' on line " + std::to_string(lineno), lineno);
    ParsedExpr e;
    LpToken stop = parse_terms(lex, e, lineno);
    if (stop.kind != LpToken::End)
      throw LpFormatError(
          "unexpected relation in objective on line " + std::to_string(lineno),
          lineno);
    m.objective = to_coefs(e);
    m.objective_constant = e.constant;
  }

  if (subject_to) {
    for (const auto& [lineno, line] : subject_to->lines) {
      LineLexer lex(line, lineno);
      LpToken label = lex.next();
      if (label.kind != LpToken::Name || lex.next().kind != LpToken::Colon)
        throw LpFormatError(
            "expected 'label:' on line " + std::to_string(lineno), lineno);
      ParsedExpr e;
      LpToken stop = parse_terms(lex, e, lineno);
      RelSense sense;
      if (stop.kind == LpToken::Le)
        sense = RelSense::Le;
      else if (stop.kind == LpToken::Ge)
        sense = RelSense::Ge;
      else if (stop.kind == LpToken::Eq)
        sense = RelSense::Eq;
      else
        throw LpFormatError(
            "constraint without relation on line " + std::to_string(lineno),
            lineno);
      ParsedExpr rhs;
      LpToken after = parse_terms(lex, rhs, lineno);
      if (after.kind != LpToken::End || !rhs.terms.empty())
        throw LpFormatError(
            "right-hand side must be a constant on line " +
                std::to_string(lineno),
            lineno);
      CoefList coefs = to_coefs(e);
      if (coefs.empty())
        throw LpFormatError(
            "constraint with no variables on line " + std::to_string(lineno),
            lineno);
      m.constraints.push_back(
          {label.text, std::move(coefs), sense, rhs.constant - e.constant});
    }
  }

  if (m.vars.empty()) throw LpFormatError("model has no variables", 0);
  return m;
}

}  // namespace sageforge::model
