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

#include "fpsparql/loader.hpp"

#include <cctype>

#include "fpsparql/error.hpp"

namespace fpsparql {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineCursor {
 public:
  explicit LineCursor(std::string_view s) : s_(s) {}

  void skip_blanks() {
    while (pos_ < s_.size() && is_blank(s_[pos_])) ++pos_;
  }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  std::size_t pos() const { return pos_; }

  std::string_view bare_token() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && !is_blank(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  // Reads a double-quoted string with \" \\ \t \n \r escapes.
  std::optional<std::string> quoted(std::string& error) {
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        char e = s_[pos_++];
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          default:
            error = std::string("unknown escape \\") + e;
            return std::nullopt;
        }
        continue;
      }
      out += c;
    }
    error = "unterminated quote";
    return std::nullopt;
  }

  bool consume(std::string_view lit) {
    if (s_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// Parses an object at the cursor. On success the cursor sits right after it.
std::optional<Value> read_object(LineCursor& cur, std::string& error) {
  if (cur.peek() != '"') {
    std::string_view tok = cur.bare_token();
    return Value::node(std::string(tok));
  }
  auto text = cur.quoted(error);
  if (!text) return std::nullopt;
  if (cur.consume("^^")) {
    std::string_view dt = cur.bare_token();
    if (dt.empty()) {
      error = "missing datatype after ^^";
      return std::nullopt;
    }
    try {
      return Value::typed(std::move(*text), std::string(dt));
    } catch (const Error& e) {
      error = e.what();
      return std::nullopt;
    }
  }
  return Value::string(std::move(*text));
}

}  // namespace

LineResult parse_triple_line(std::string_view line) {
  LineResult result;
  LineCursor cur(line);
  cur.skip_blanks();
  if (cur.done() || cur.peek() == '#') return result;

  auto reject = [&](std::string reason) {
    result.error = std::move(reason);
    return result;
  };

  if (cur.peek() == '"') return reject("subject must be a node id");
  std::string subject(cur.bare_token());
  cur.skip_blanks();
  if (cur.done()) return reject("fewer than 3 tokens");
  if (cur.peek() == '"') return reject("predicate must be an identifier");
  std::string predicate(cur.bare_token());
  cur.skip_blanks();
  if (cur.done()) return reject("fewer than 3 tokens");

  std::string error;
  std::optional<Value> object;
  bool glued_terminator = false;
  if (cur.peek() == '"') {
    auto text = cur.quoted(error);
    if (!text) return reject(error);
    if (cur.consume("^^")) {
      std::string_view dt = cur.bare_token();
      if (dt.size() > 1 && dt.back() == '.') {
        dt.remove_suffix(1);
        glued_terminator = true;
      }
      if (dt.empty() || dt == ".") return reject("missing datatype after ^^");
      try {
        object = Value::typed(std::move(*text), std::string(dt));
      } catch (const Error& e) {
        return reject(e.what());
      }
    } else {
      object = Value::string(std::move(*text));
      if (cur.consume(".")) glued_terminator = true;
    }
  } else {
    std::string_view tok = cur.bare_token();
    if (tok == ".") return reject("fewer than 3 tokens");
    object = Value::node(std::string(tok));
  }

  if (!glued_terminator) {
    cur.skip_blanks();
    if (cur.done() || !cur.consume(".")) {
      return reject(cur.done() ? "missing terminating ' .'"
                               : "too many tokens");
    }
  }
  cur.skip_blanks();
  if (!cur.done() && cur.peek() != '#') return reject("too many tokens");

  if (predicate == "@") return reject("empty attribute name");
  if (predicate.front() != kAttributePrefix && !object->is_node()) {
    return reject("relationship object must be a node id");
  }
  result.triple = ParsedTriple{std::move(subject), std::move(predicate),
                               std::move(*object)};
  return result;
}

std::optional<Value> parse_object_token(std::string_view text) {
  if (text.empty()) return std::nullopt;
  LineCursor cur(text);
  std::string error;
  auto v = read_object(cur, error);
  if (!v || !cur.done()) return std::nullopt;
  return v;
}

LoadReport load_triples(TripleStore& store, std::istream& source) {
  LoadReport report;
  std::string line;
  std::size_t line_number = 0;
  Dictionary& dict = store.dictionary();
  while (std::getline(source, line)) {
    ++line_number;
    LineResult parsed = parse_triple_line(line);
    if (!parsed.triple && !parsed.error) continue;
    ++report.triples_read;
    if (parsed.error) {
      report.rejected_lines.emplace_back(line_number, *parsed.error);
      continue;
    }
    ParsedTriple& t = *parsed.triple;
    TermId s = dict.intern(Value::node(std::move(t.subject)));
    TermId p = dict.intern(Value::node(t.predicate));
    if (t.predicate.front() == kAttributePrefix) {
      store.insert_attribute(s, p, dict.intern(t.object));
      ++report.attribute_rows;
    } else {
      store.insert_relationship(GraphEdge{s, p, dict.intern(t.object), kNoTerm});
      ++report.relationship_rows;
    }
  }
  if (source.bad()) {
    throw Error(ErrorKind::kIo,
                "read failure after line " + std::to_string(line_number));
  }
  return report;
}

}  // namespace fpsparql
