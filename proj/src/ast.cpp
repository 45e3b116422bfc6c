/** Copyright 2026 The FPSPARQL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fpsparql/ast.hpp"

#include <algorithm>

namespace fpsparql {

namespace {

bool literal_predicate_starts_with_at(const Term& p, bool* is_literal) {
  *is_literal = !is_variable(p);
  if (!*is_literal) return false;
  const std::string& text = as_value(p).text();
  return !text.empty() && text.front() == '@';
}

void add_unique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

}  // namespace

bool TriplePattern::is_attribute_pattern() const {
  bool literal = false;
  return literal_predicate_starts_with_at(predicate, &literal) && literal;
}

bool TriplePattern::is_relationship_pattern() const {
  bool literal = false;
  bool at = literal_predicate_starts_with_at(predicate, &literal);
  return literal && !at;
}

std::vector<std::string> TriplePattern::variables() const {
  std::vector<std::string> out;
  for (const Term* t : {&subject, &predicate, &object}) {
    if (is_variable(*t)) add_unique(out, as_variable(*t).name);
  }
  return out;
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kLess: return "<";
    case CompareOp::kLessEqual: return "<=";
    case CompareOp::kGreater: return ">";
    case CompareOp::kGreaterEqual: return ">=";
    case CompareOp::kEqual: return "=";
    case CompareOp::kNotEqual: return "!=";
  }
  return "?";
}

FilterExpr FilterExpr::compare(Term lhs, CompareOp op, Term rhs) {
  FilterExpr e;
  e.kind = Kind::kCompare;
  e.lhs = std::move(lhs);
  e.op = op;
  e.rhs = std::move(rhs);
  return e;
}

FilterExpr FilterExpr::regex(Variable var, std::string pattern) {
  FilterExpr e;
  e.kind = Kind::kRegex;
  e.regex_var = std::move(var);
  e.pattern = std::move(pattern);
  return e;
}

FilterExpr FilterExpr::conjunction(std::vector<FilterExpr> operands) {
  FilterExpr e;
  e.kind = Kind::kAnd;
  e.operands = std::move(operands);
  return e;
}

FilterExpr FilterExpr::disjunction(std::vector<FilterExpr> operands) {
  FilterExpr e;
  e.kind = Kind::kOr;
  e.operands = std::move(operands);
  return e;
}

std::vector<std::string> FilterExpr::variables() const {
  std::vector<std::string> out;
  switch (kind) {
    case Kind::kCompare:
      if (is_variable(lhs)) add_unique(out, as_variable(lhs).name);
      if (is_variable(rhs)) add_unique(out, as_variable(rhs).name);
      break;
    case Kind::kRegex:
      add_unique(out, regex_var.name);
      break;
    case Kind::kAnd:
    case Kind::kOr:
      for (const auto& o : operands) {
        for (const auto& v : o.variables()) add_unique(out, v);
      }
      break;
  }
  return out;
}

RegexAst RegexAst::leaf(Variable v) {
  RegexAst r;
  r.kind = Kind::kElement;
  r.element = std::move(v);
  return r;
}

RegexAst RegexAst::concat(std::vector<RegexAst> parts) {
  RegexAst r;
  r.kind = Kind::kConcat;
  r.children = std::move(parts);
  return r;
}

RegexAst RegexAst::alternation(std::vector<RegexAst> parts) {
  RegexAst r;
  r.kind = Kind::kAlternation;
  r.children = std::move(parts);
  return r;
}

RegexAst RegexAst::repeated(RegexAst child, Repeat kind) {
  RegexAst r;
  r.kind = Kind::kRepeat;
  r.repeat = kind;
  r.children.push_back(std::move(child));
  return r;
}

RegexAst RegexAst::group(RegexAst child) {
  RegexAst r;
  r.kind = Kind::kGroup;
  r.children.push_back(std::move(child));
  return r;
}

std::vector<std::string> RegexAst::leaf_variables() const {
  std::vector<std::string> out;
  if (kind == Kind::kElement) {
    out.push_back(element.name);
    return out;
  }
  for (const auto& c : children) {
    for (const auto& v : c.leaf_variables()) add_unique(out, v);
  }
  return out;
}

ScopeExpr ScopeExpr::named(std::string name) {
  ScopeExpr s;
  s.kind = Kind::kNamed;
  s.name = std::move(name);
  return s;
}

ScopeExpr ScopeExpr::binary(Kind kind, ScopeExpr lhs, ScopeExpr rhs) {
  ScopeExpr s;
  s.kind = kind;
  s.operands.push_back(std::move(lhs));
  s.operands.push_back(std::move(rhs));
  return s;
}

}  // namespace fpsparql
