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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpsparql/ast.hpp"

namespace fpsparql {

enum class TokenKind {
  kKeyword,
  kVariable,
  kIdentifier,
  kString,
  kTypedLiteral,
  kPunctuation,
  kComparison,
  kLogical,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  // Keywords are lower-cased; variables drop the '?'; strings are unescaped;
  // typed literals hold the lexical form.
  std::string lexeme;
  std::string datatype;  // kTypedLiteral only
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;  // bytes of source text covered

  bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }
};

// Throws ParseError on an unterminated string or an illegal character.
std::vector<Token> tokenize(std::string_view text);

// Throws ParseError (syntax and static-semantic errors) or Error(kValidation)
// never; every failure is a ParseError carrying a position.
QueryAst parse(std::string_view text);

// Parses the regular-expression component of a PCONSTRUCT triple. The
// tokens must be exactly the expression.
RegexAst parse_path_regex(std::span<const Token> tokens);

// Canonical text that parses back to an identical AST.
std::string to_text(const QueryAst& query);
std::string to_text(const SelectQuery& query);
std::string to_text(const RegexAst& regex);
std::string to_text(const ScopeExpr& scope);
std::string to_text(const FilterExpr& filter);
std::string to_text(const TriplePattern& pattern);
std::string to_text(const Term& term);

}  // namespace fpsparql
