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

#include <algorithm>
#include <set>

#include "fpsparql/error.hpp"
#include "fpsparql/parser.hpp"

namespace fpsparql {

namespace {

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kVariable: return "variable ?" + t.lexeme;
    case TokenKind::kString: return "string \"" + t.lexeme + "\"";
    case TokenKind::kTypedLiteral: return "typed literal \"" + t.lexeme + "\"";
    default: return std::string(to_string(t.kind)) + " '" + t.lexeme + "'";
  }
}

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::string_view text)
      : toks_(tokens), text_(text) {}

  QueryAst parse_query() {
    if (at_end()) fail("expected a query");
    QueryAst result;
    if (at_keyword("select")) {
      result = parse_select();
    } else if (at_keyword("fconstruct")) {
      result = parse_fconstruct();
    } else if (at_keyword("pconstruct")) {
      result = parse_pconstruct();
    } else if (at_kind(TokenKind::kIdentifier) || at_punct("(")) {
      result = parse_apply();
    } else {
      fail("expected 'select', 'fconstruct', 'pconstruct' or a scope before 'apply'");
    }
    if (!at_end()) fail("unexpected trailing input");
    return result;
  }

  RegexAst parse_regex_only() {
    if (at_end()) fail("empty regular expression");
    RegexAst r = parse_alternation();
    if (!at_end()) fail("unexpected token in regular expression");
    return r;
  }

 private:
  // ---- token helpers -----------------------------------------------------
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token& cur() const { return toks_[pos_]; }
  bool at_kind(TokenKind k) const { return !at_end() && cur().kind == k; }
  bool at_keyword(std::string_view kw) const {
    return !at_end() && cur().is(TokenKind::kKeyword, kw);
  }
  bool at_punct(std::string_view p) const {
    return !at_end() && cur().is(TokenKind::kPunctuation, p);
  }

  [[noreturn]] void fail_at(const Token* t, const std::string& message) const {
    std::size_t line = 1, col = 1, offset = text_.size();
    if (t) {
      line = t->line;
      col = t->column;
      offset = t->offset;
    } else {
      for (char c : text_) {
        if (c == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
    }
    std::string found = t ? describe(*t) : std::string("end of input");
    ParseError e(line, col, message + " (found " + found + ")");
    e.set_offset(offset);
    throw e;
  }
  [[noreturn]] void fail(const std::string& message) const {
    fail_at(at_end() ? nullptr : &cur(), message);
  }

  const Token& take() { return toks_[pos_++]; }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
    ++pos_;
  }
  const Token& expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    return take();
  }
  Variable expect_variable(const char* what) {
    if (!at_kind(TokenKind::kVariable)) fail(std::string("expected ") + what);
    return Variable{take().lexeme};
  }
  std::string expect_name(const char* what) {
    if (!at_kind(TokenKind::kIdentifier)) fail(std::string("expected ") + what);
    return take().lexeme;
  }

  // ---- terms ---------------------------------------------------------------
  Value literal_from(const Token& t) {
    switch (t.kind) {
      case TokenKind::kString:
        return Value::string(t.lexeme);
      case TokenKind::kTypedLiteral:
        try {
          return Value::typed(t.lexeme, t.datatype);
        } catch (const Error& e) {
          fail_at(&t, e.what());
        }
      default:
        return Value::node(t.lexeme);
    }
  }

  Term parse_subject() {
    if (at_kind(TokenKind::kVariable)) return Variable{take().lexeme};
    if (at_kind(TokenKind::kIdentifier) || at_kind(TokenKind::kString)) {
      return literal_from(take());
    }
    fail("expected a subject (variable or node id)");
  }

  Term parse_predicate() {
    if (at_kind(TokenKind::kVariable)) return Variable{take().lexeme};
    if (at_kind(TokenKind::kIdentifier) || at_kind(TokenKind::kKeyword)) {
      return Value::node(take().lexeme);
    }
    fail("expected a predicate (variable or name)");
  }

  Term parse_object() {
    if (at_kind(TokenKind::kVariable)) return Variable{take().lexeme};
    if (at_kind(TokenKind::kIdentifier) || at_kind(TokenKind::kString) ||
        at_kind(TokenKind::kTypedLiteral) || at_kind(TokenKind::kKeyword)) {
      return literal_from(take());
    }
    fail("expected an object (variable, node id or literal)");
  }

  // ---- group patterns ----------------------------------------------------
  // Returns the group and records the closing brace for later diagnostics.
  GroupPattern parse_group(const Token** close) {
    expect_punct("{");
    GroupPattern g;
    for (;;) {
      if (at_end()) fail("expected '}'");
      if (at_punct("}")) break;
      if (at_keyword("filter")) {
        ++pos_;
        g.filters.push_back(parse_filter_body());
        if (at_punct(".")) ++pos_;
        continue;
      }
      TriplePattern p;
      p.subject = parse_subject();
      p.predicate = parse_predicate();
      p.object = parse_object();
      g.patterns.push_back(std::move(p));
      if (at_punct(".")) {
        ++pos_;
      } else if (!at_punct("}")) {
        fail("expected '.' or '}' after a triple pattern");
      }
    }
    *close = &take();
    return g;
  }

  FilterExpr parse_filter_body() {
    if (at_keyword("regex")) return parse_regex_call();
    expect_punct("(");
    FilterExpr e = parse_or();
    expect_punct(")");
    return e;
  }

  FilterExpr parse_or() {
    std::vector<FilterExpr> parts{parse_and()};
    while (at_kind(TokenKind::kLogical) && cur().lexeme == "||") {
      ++pos_;
      parts.push_back(parse_and());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return FilterExpr::disjunction(std::move(parts));
  }

  FilterExpr parse_and() {
    std::vector<FilterExpr> parts{parse_filter_primary()};
    while (at_kind(TokenKind::kLogical) && cur().lexeme == "&&") {
      ++pos_;
      parts.push_back(parse_filter_primary());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return FilterExpr::conjunction(std::move(parts));
  }

  FilterExpr parse_filter_primary() {
    if (at_punct("(")) {
      ++pos_;
      FilterExpr e = parse_or();
      expect_punct(")");
      return e;
    }
    if (at_keyword("regex")) return parse_regex_call();
    Term lhs = parse_operand();
    if (!at_kind(TokenKind::kComparison)) fail("expected a comparison operator");
    std::string op = take().lexeme;
    Term rhs = parse_operand();
    CompareOp cmp = CompareOp::kEqual;
    if (op == "<") cmp = CompareOp::kLess;
    else if (op == "<=") cmp = CompareOp::kLessEqual;
    else if (op == ">") cmp = CompareOp::kGreater;
    else if (op == ">=") cmp = CompareOp::kGreaterEqual;
    else if (op == "!=") cmp = CompareOp::kNotEqual;
    return FilterExpr::compare(std::move(lhs), cmp, std::move(rhs));
  }

  Term parse_operand() {
    if (at_kind(TokenKind::kVariable)) return Variable{take().lexeme};
    if (at_kind(TokenKind::kIdentifier) || at_kind(TokenKind::kString) ||
        at_kind(TokenKind::kTypedLiteral)) {
      return literal_from(take());
    }
    fail("expected a variable or literal in filter");
  }

  FilterExpr parse_regex_call() {
    expect_keyword("regex");
    expect_punct("(");
    Variable v = expect_variable("a variable as the first regex argument");
    expect_punct(",");
    if (!at_kind(TokenKind::kString)) fail("expected a string pattern");
    std::string pattern = take().lexeme;
    expect_punct(")");
    return FilterExpr::regex(std::move(v), std::move(pattern));
  }

  // ---- static checks -------------------------------------------------------
  static std::set<std::string> pattern_vars(const std::vector<TriplePattern>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps) {
      for (auto& v : p.variables()) out.insert(v);
    }
    return out;
  }

  void check_filters(const GroupPattern& g, const std::set<std::string>& bound,
                     const Token* where) const {
    for (const auto& f : g.filters) {
      for (const auto& v : f.variables()) {
        if (!bound.contains(v)) {
          fail_at(where, "filter variable ?" + v + " is not bound by any pattern");
        }
      }
    }
  }

  // ---- query forms ---------------------------------------------------------
  SelectQuery parse_select() {
    expect_keyword("select");
    SelectQuery q;
    while (at_kind(TokenKind::kVariable)) q.projection.push_back(Variable{take().lexeme});
    if (q.projection.empty()) fail("expected at least one projected variable");
    expect_keyword("where");
    const Token* close = nullptr;
    q.where = parse_group(&close);
    if (q.where.patterns.empty()) fail_at(close, "WHERE block has no triple patterns");
    auto bound = pattern_vars(q.where.patterns);
    for (const auto& v : q.projection) {
      if (!bound.contains(v.name)) {
        fail_at(close, "projected variable ?" + v.name + " is not bound by any pattern");
      }
    }
    check_filters(q.where, bound, close);
    return q;
  }

  FconstructQuery parse_fconstruct() {
    expect_keyword("fconstruct");
    FconstructQuery q;
    q.folder_name = expect_name("a folder name");
    if (at_keyword("as")) {
      ++pos_;
      q.alias = expect_variable("an alias variable after 'as'");
    }
    const Token* close = nullptr;
    GroupPattern group;
    bool has_group = false;
    if (at_punct("(")) {
      ++pos_;
      q.child_folders.push_back(expect_name("a folder name"));
      while (at_punct(",")) {
        ++pos_;
        q.child_folders.push_back(expect_name("a folder name"));
      }
      close = &expect_punct(")");
      if (at_keyword("select")) {
        fail("FCONSTRUCT takes either a member query or a folder list, not both");
      }
      if (at_keyword("where")) {
        ++pos_;
        group = parse_group(&close);
        has_group = true;
      }
    } else if (at_keyword("select")) {
      ++pos_;
      q.member_var = expect_variable("the member variable");
      if (at_kind(TokenKind::kVariable)) {
        fail("FCONSTRUCT selects exactly one member variable");
      }
      expect_keyword("where");
      group = parse_group(&close);
      has_group = true;
      if (at_punct("(")) {
        fail("FCONSTRUCT takes either a member query or a folder list, not both");
      }
    } else {
      fail("expected 'select' or a parenthesized folder list");
    }

    if (has_group) {
      for (auto& p : group.patterns) {
        bool subject_alias = q.alias && is_variable(p.subject) &&
                             as_variable(p.subject) == *q.alias;
        auto vars = p.variables();
        bool mentions_alias =
            q.alias && std::find(vars.begin(), vars.end(), q.alias->name) != vars.end();
        if (subject_alias) {
          if (!p.is_attribute_pattern() || is_variable(p.object)) {
            fail_at(close, "alias ?" + q.alias->name +
                               " may only carry attribute patterns with literal values");
          }
          q.attr_patterns.push_back(std::move(p));
        } else if (mentions_alias) {
          fail_at(close, "alias ?" + q.alias->name +
                             " may only appear as the subject of attribute patterns");
        } else {
          q.body.patterns.push_back(std::move(p));
        }
      }
      q.body.filters = std::move(group.filters);
      if (q.alias) {
        for (const auto& f : q.body.filters) {
          auto vars = f.variables();
          if (std::find(vars.begin(), vars.end(), q.alias->name) != vars.end()) {
            fail_at(close, "alias ?" + q.alias->name + " may not appear in filters");
          }
        }
      }
    }

    if (q.member_var) {
      if (q.body.patterns.empty()) fail_at(close, "WHERE block has no triple patterns");
      auto bound = pattern_vars(q.body.patterns);
      if (!bound.contains(q.member_var->name)) {
        fail_at(close, "member variable ?" + q.member_var->name +
                           " is not bound by any pattern");
      }
      check_filters(q.body, bound, close);
    } else if (!q.body.patterns.empty() || !q.body.filters.empty()) {
      fail_at(close, "a folder-of-folders FCONSTRUCT only allows alias attributes");
    }
    return q;
  }

  PconstructQuery parse_pconstruct() {
    expect_keyword("pconstruct");
    PconstructQuery q;
    q.path_name = expect_name("a path node name");
    expect_punct("(");
    q.start_var = expect_variable("the start variable");
    expect_punct(",");
    q.end_var = expect_variable("the end variable");
    expect_punct(",");
    // The expression runs to the ')' that closes the triple.
    std::size_t from = pos_;
    int depth = 0;
    while (!at_end()) {
      if (at_punct("(")) ++depth;
      if (at_punct(")")) {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (at_end()) fail("expected ')' closing the path triple");
    std::size_t to = pos_;
    if (from == to) fail("empty regular expression");
    {
      Parser sub(toks_.subspan(from, to - from), text_);
      try {
        q.regex = sub.parse_regex_only();
      } catch (ParseError& e) {
        if (sub.at_end()) fail_at(&toks_[to], e.detail());
        throw;
      }
    }
    ++pos_;  // ')'
    expect_keyword("where");
    const Token* close = nullptr;
    q.where = parse_group(&close);
    for (const Variable* v : {&q.start_var, &q.end_var}) {
      bool constrained = std::any_of(
          q.where.patterns.begin(), q.where.patterns.end(), [&](const TriplePattern& p) {
            return is_variable(p.subject) && as_variable(p.subject) == *v;
          });
      if (!constrained) {
        fail_at(close, "?" + v->name + " must be constrained by at least one pattern");
      }
    }
    check_filters(q.where, pattern_vars(q.where.patterns), close);
    return q;
  }

  ScopeExpr parse_scope_primary() {
    if (at_punct("(")) {
      ++pos_;
      ScopeExpr s = parse_scope();
      expect_punct(")");
      return s;
    }
    return ScopeExpr::named(expect_name("a folder or path node name"));
  }

  ScopeExpr parse_scope() {
    ScopeExpr lhs = parse_scope_primary();
    for (;;) {
      ScopeExpr::Kind kind;
      if (at_keyword("union")) kind = ScopeExpr::Kind::kUnion;
      else if (at_keyword("intersect")) kind = ScopeExpr::Kind::kIntersect;
      else if (at_keyword("minus")) kind = ScopeExpr::Kind::kMinus;
      else break;
      ++pos_;
      lhs = ScopeExpr::binary(kind, std::move(lhs), parse_scope_primary());
    }
    return lhs;
  }

  ApplyQuery parse_apply() {
    ApplyQuery q;
    q.scope = parse_scope();
    expect_keyword("apply");
    expect_punct("(");
    q.inner = parse_select();
    expect_punct(")");
    return q;
  }

  // ---- path regex ----------------------------------------------------------
  RegexAst parse_alternation() {
    std::vector<RegexAst> branches{parse_concat()};
    while (at_punct("|")) {
      ++pos_;
      branches.push_back(parse_concat());
    }
    if (branches.size() == 1) return std::move(branches.front());
    return RegexAst::alternation(std::move(branches));
  }

  bool at_regex_atom() const {
    return at_kind(TokenKind::kVariable) || at_punct("(");
  }

  RegexAst parse_concat() {
    if (at_punct("*") || at_punct("+") || at_punct("?")) {
      fail("dangling repetition operator");
    }
    if (!at_regex_atom()) fail("expected a path element variable or '('");
    std::vector<RegexAst> parts;
    while (at_regex_atom()) parts.push_back(parse_repeat());
    if (parts.size() == 1) return std::move(parts.front());
    return RegexAst::concat(std::move(parts));
  }

  RegexAst parse_repeat() {
    RegexAst atom;
    if (at_punct("(")) {
      ++pos_;
      if (at_punct(")")) fail("empty group");
      atom = RegexAst::group(parse_alternation());
      expect_punct(")");
    } else {
      atom = RegexAst::leaf(Variable{take().lexeme});
    }
    while (at_punct("*") || at_punct("+") || at_punct("?")) {
      char op = take().lexeme[0];
      atom = RegexAst::repeated(std::move(atom), op == '*'   ? RegexAst::Repeat::kStar
                                                 : op == '+' ? RegexAst::Repeat::kPlus
                                                             : RegexAst::Repeat::kOptional);
    }
    return atom;
  }

  std::span<const Token> toks_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QueryAst parse(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  return Parser(tokens, text).parse_query();
}

RegexAst parse_path_regex(std::span<const Token> tokens) {
  return Parser(tokens, {}).parse_regex_only();
}

}  // namespace fpsparql
