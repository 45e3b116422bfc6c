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

#include <sstream>

#include "fpsparql/parser.hpp"

namespace fpsparql {

namespace {

void print_group(std::ostringstream& os, const std::vector<TriplePattern>& lead,
                 const GroupPattern& g) {
  os << "where {\n";
  for (const auto& p : lead) os << "  " << to_text(p) << " .\n";
  for (const auto& p : g.patterns) os << "  " << to_text(p) << " .\n";
  for (const auto& f : g.filters) os << "  FILTER (" << to_text(f) << ") .\n";
  os << "}";
}

std::string regex_text(const RegexAst& r, int parent_precedence) {
  // precedence: alternation 0, concat 1, repeat/atom 2
  switch (r.kind) {
    case RegexAst::Kind::kElement:
      return "?" + r.element.name;
    case RegexAst::Kind::kGroup:
      return "(" + regex_text(r.children.front(), 0) + ")";
    case RegexAst::Kind::kRepeat: {
      const char* op = r.repeat == RegexAst::Repeat::kStar   ? "*"
                       : r.repeat == RegexAst::Repeat::kPlus ? "+"
                                                             : "?";
      return regex_text(r.children.front(), 2) + op;
    }
    case RegexAst::Kind::kConcat:
    case RegexAst::Kind::kAlternation: {
      bool alt = r.kind == RegexAst::Kind::kAlternation;
      int mine = alt ? 0 : 1;
      std::string out;
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += alt ? " | " : " ";
        out += regex_text(r.children[i], mine + 1);
      }
      return parent_precedence > mine ? "(" + out + ")" : out;
    }
  }
  return {};
}

std::string filter_text(const FilterExpr& f, bool nested) {
  switch (f.kind) {
    case FilterExpr::Kind::kCompare:
      return to_text(f.lhs) + " " + to_string(f.op) + " " + to_text(f.rhs);
    case FilterExpr::Kind::kRegex:
      return "regex(?" + f.regex_var.name + ", " +
             Value::string(f.pattern).render() + ")";
    case FilterExpr::Kind::kAnd:
    case FilterExpr::Kind::kOr: {
      const char* op = f.kind == FilterExpr::Kind::kAnd ? " && " : " || ";
      std::string out;
      for (std::size_t i = 0; i < f.operands.size(); ++i) {
        if (i) out += op;
        out += filter_text(f.operands[i], true);
      }
      return nested ? "(" + out + ")" : out;
    }
  }
  return {};
}

std::string scope_text(const ScopeExpr& s) {
  if (s.kind == ScopeExpr::Kind::kNamed) return s.name;
  const char* op = s.kind == ScopeExpr::Kind::kUnion       ? " union "
                   : s.kind == ScopeExpr::Kind::kIntersect ? " intersect "
                                                           : " minus ";
  return "(" + scope_text(s.operands[0]) + op + scope_text(s.operands[1]) + ")";
}

}  // namespace

std::string to_text(const Term& term) {
  if (is_variable(term)) return "?" + as_variable(term).name;
  return as_value(term).render();
}

std::string to_text(const TriplePattern& p) {
  return to_text(p.subject) + " " + to_text(p.predicate) + " " + to_text(p.object);
}

std::string to_text(const FilterExpr& f) { return filter_text(f, false); }

std::string to_text(const RegexAst& r) { return regex_text(r, 0); }

std::string to_text(const ScopeExpr& s) {
  std::string t = scope_text(s);
  return s.kind == ScopeExpr::Kind::kNamed ? "(" + t + ")" : t;
}

std::string to_text(const SelectQuery& q) {
  std::ostringstream os;
  os << "select";
  for (const auto& v : q.projection) os << " ?" << v.name;
  os << "\n";
  print_group(os, {}, q.where);
  return os.str();
}

std::string to_text(const QueryAst& query) {
  std::ostringstream os;
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, SelectQuery>) {
          os << to_text(q);
        } else if constexpr (std::is_same_v<T, FconstructQuery>) {
          os << "fconstruct " << q.folder_name;
          if (q.alias) os << " as ?" << q.alias->name;
          os << "\n";
          if (q.member_var) {
            os << "select ?" << q.member_var->name << "\n";
            print_group(os, q.attr_patterns, q.body);
          } else {
            os << "(";
            for (std::size_t i = 0; i < q.child_folders.size(); ++i) {
              os << (i ? ", " : "") << q.child_folders[i];
            }
            os << ")";
            if (!q.attr_patterns.empty()) {
              os << "\n";
              print_group(os, q.attr_patterns, GroupPattern{});
            }
          }
        } else if constexpr (std::is_same_v<T, PconstructQuery>) {
          os << "pconstruct " << q.path_name << "\n(?" << q.start_var.name << ", ?"
             << q.end_var.name << ", " << to_text(q.regex) << ")\n";
          print_group(os, {}, q.where);
        } else {
          os << to_text(q.scope) << " apply (\n" << to_text(q.inner) << ")";
        }
      },
      query);
  return os.str();
}

}  // namespace fpsparql
