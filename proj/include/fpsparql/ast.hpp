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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpsparql/value.hpp"

namespace fpsparql {

// A query variable; `name` excludes the leading '?'.
struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

// A pattern position: either a variable or a constant. Predicate constants
// are node values holding the predicate name.
using Term = std::variant<Variable, Value>;

inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }
inline const Variable& as_variable(const Term& t) { return std::get<Variable>(t); }
inline const Value& as_value(const Term& t) { return std::get<Value>(t); }

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  // Literal predicate starting with '@'.
  bool is_attribute_pattern() const;
  // Literal predicate not starting with '@'.
  bool is_relationship_pattern() const;
  std::vector<std::string> variables() const;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

enum class CompareOp { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual, kNotEqual };

const char* to_string(CompareOp op);

struct FilterExpr {
  enum class Kind { kCompare, kRegex, kAnd, kOr };

  Kind kind = Kind::kCompare;
  // kCompare
  Term lhs;
  CompareOp op = CompareOp::kEqual;
  Term rhs;
  // kRegex
  Variable regex_var;
  std::string pattern;
  // kAnd / kOr: two or more operands
  std::vector<FilterExpr> operands;

  static FilterExpr compare(Term lhs, CompareOp op, Term rhs);
  static FilterExpr regex(Variable var, std::string pattern);
  static FilterExpr conjunction(std::vector<FilterExpr> operands);
  static FilterExpr disjunction(std::vector<FilterExpr> operands);

  std::vector<std::string> variables() const;

  friend bool operator==(const FilterExpr&, const FilterExpr&) = default;
};

struct GroupPattern {
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  friend bool operator==(const GroupPattern&, const GroupPattern&) = default;
};

struct SelectQuery {
  std::vector<Variable> projection;
  GroupPattern where;
  friend bool operator==(const SelectQuery&, const SelectQuery&) = default;
};

struct FconstructQuery {
  std::string folder_name;
  std::optional<Variable> alias;
  // Member form: `select ?m where {...}`.
  std::optional<Variable> member_var;
  GroupPattern body;
  // Folder-of-folders form: `(F1, F2, ...)`.
  std::vector<std::string> child_folders;
  // (alias, @attr, literal) patterns; they become folder attributes.
  std::vector<TriplePattern> attr_patterns;
  friend bool operator==(const FconstructQuery&, const FconstructQuery&) = default;
};

struct RegexAst {
  enum class Kind { kElement, kConcat, kAlternation, kRepeat, kGroup };
  enum class Repeat { kStar, kPlus, kOptional };

  Kind kind = Kind::kElement;
  Variable element;              // kElement
  Repeat repeat = Repeat::kStar;  // kRepeat
  std::vector<RegexAst> children;

  static RegexAst leaf(Variable v);
  static RegexAst concat(std::vector<RegexAst> parts);
  static RegexAst alternation(std::vector<RegexAst> parts);
  static RegexAst repeated(RegexAst child, Repeat kind);
  static RegexAst group(RegexAst child);

  // Distinct leaf variable names in first-occurrence order.
  std::vector<std::string> leaf_variables() const;

  friend bool operator==(const RegexAst&, const RegexAst&) = default;
};

struct PconstructQuery {
  std::string path_name;
  Variable start_var;
  Variable end_var;
  RegexAst regex;
  GroupPattern where;
  friend bool operator==(const PconstructQuery&, const PconstructQuery&) = default;
};

struct ScopeExpr {
  enum class Kind { kNamed, kUnion, kIntersect, kMinus };
  Kind kind = Kind::kNamed;
  std::string name;                 // kNamed
  std::vector<ScopeExpr> operands;  // binary set operations: exactly two

  static ScopeExpr named(std::string name);
  static ScopeExpr binary(Kind kind, ScopeExpr lhs, ScopeExpr rhs);

  friend bool operator==(const ScopeExpr&, const ScopeExpr&) = default;
};

struct ApplyQuery {
  ScopeExpr scope;
  SelectQuery inner;
  friend bool operator==(const ApplyQuery&, const ApplyQuery&) = default;
};

using QueryAst = std::variant<SelectQuery, FconstructQuery, PconstructQuery, ApplyQuery>;

}  // namespace fpsparql
