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

#include <array>
#include <cctype>

#include "fpsparql/error.hpp"
#include "fpsparql/parser.hpp"

namespace fpsparql {

namespace {

constexpr std::array<std::string_view, 11> kKeywords = {
    "select", "where", "fconstruct", "pconstruct", "apply", "as",
    "union", "intersect", "minus", "filter", "regex"};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '@': case ':': case '-': case '/': case '#': case '%':
    case '~': case '$':
      return true;
    default:
      return static_cast<unsigned char>(c) >= 0x80;  // UTF-8 continuation
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token start(TokenKind kind) const {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.column = col_;
    t.offset = pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& at_token, const std::string& message) const {
    ParseError e(at_token.line, at_token.column, message);
    e.set_offset(at_token.offset);
    throw e;
  }

  void finish(Token& t) const { t.length = pos_ - t.offset; }

  Token next() {
    char c = text_[pos_];
    if (c == '?' && is_name_char(at(pos_ + 1))) {
      Token t = start(TokenKind::kVariable);
      advance();
      std::size_t from = pos_;
      while (is_name_char(at(pos_))) advance();
      t.lexeme = std::string(text_.substr(from, pos_ - from));
      finish(t);
      return t;
    }
    if (c == '"' || c == '\'') return string_or_typed();
    if ((c == '&' || c == '|') && at(pos_ + 1) == c) {
      Token t = start(TokenKind::kLogical);
      t.lexeme = std::string{c, c};
      advance(2);
      finish(t);
      return t;
    }
    if (std::string_view("{}().,?*+|").find(c) != std::string_view::npos) {
      Token t = start(TokenKind::kPunctuation);
      t.lexeme = std::string(1, c);
      advance();
      finish(t);
      return t;
    }
    if (c == '>' || c == '<' || c == '=' || c == '!') {
      Token t = start(TokenKind::kComparison);
      if (at(pos_ + 1) == '=' && c != '=') {
        t.lexeme = std::string{c, '='};
        advance(2);
      } else if (c == '!') {
        fail(t, "illegal character '!'");
      } else {
        t.lexeme = std::string(1, c);
        advance();
      }
      finish(t);
      return t;
    }
    if (is_ident_char(c)) {
      Token t = start(TokenKind::kIdentifier);
      std::size_t from = pos_;
      for (;;) {
        if (is_ident_char(at(pos_))) {
          advance();
        } else if (at(pos_) == '.' && is_ident_char(at(pos_ + 1))) {
          advance();  // dotted names such as brainDoc.doc
        } else {
          break;
        }
      }
      t.lexeme = std::string(text_.substr(from, pos_ - from));
      if (t.lexeme.front() != '@') {
        std::string low = lower(t.lexeme);
        for (auto kw : kKeywords) {
          if (low == kw) {
            t.kind = TokenKind::kKeyword;
            t.lexeme = low;
            break;
          }
        }
      }
      finish(t);
      return t;
    }
    Token t = start(TokenKind::kPunctuation);
    fail(t, std::string("illegal character '") + c + "'");
  }

  Token string_or_typed() {
    Token t = start(TokenKind::kString);
    char quote = text_[pos_];
    advance();
    std::string value;
    for (;;) {
      if (pos_ >= text_.size()) fail(t, "unterminated string");
      char c = text_[pos_];
      if (c == quote) {
        advance();
        break;
      }
      if (c == '\n') fail(t, "unterminated string");
      if (c == '\\') {
        char e = at(pos_ + 1);
        switch (e) {
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default: fail(t, std::string("unknown escape '\\") + e + "'");
        }
        advance(2);
        continue;
      }
      value += c;
      advance();
    }
    t.lexeme = std::move(value);
    // "lexical" ^^datatype, whitespace allowed before the ^^
    std::size_t save_pos = pos_, save_line = line_, save_col = col_;
    skip_space_and_comments();
    if (at(pos_) == '^' && at(pos_ + 1) == '^') {
      advance(2);
      std::size_t from = pos_;
      while (is_ident_char(at(pos_))) advance();
      if (from == pos_) fail(t, "missing datatype after ^^");
      t.kind = TokenKind::kTypedLiteral;
      t.datatype = std::string(text_.substr(from, pos_ - from));
    } else {
      pos_ = save_pos;
      line_ = save_line;
      col_ = save_col;
    }
    finish(t);
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kVariable: return "variable";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kString: return "string";
    case TokenKind::kTypedLiteral: return "typed literal";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kComparison: return "comparison";
    case TokenKind::kLogical: return "logical operator";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace fpsparql
