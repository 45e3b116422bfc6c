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

#include "fpsparql/value.hpp"

#include <cctype>

#include "fpsparql/error.hpp"

namespace fpsparql {

Value Value::node(std::string id) {
  return Value(ValueKind::kNode, std::move(id), {});
}

Value Value::string(std::string text) {
  return Value(ValueKind::kString, std::move(text), {});
}

Value Value::typed(std::string lexical, std::string datatype) {
  if (datatype == kXsdDate && !parse_date(lexical)) {
    throw Error(ErrorKind::kValidation,
                "invalid xsd:date literal \"" + lexical + "\"");
  }
  return Value(ValueKind::kTyped, std::move(lexical), std::move(datatype));
}

std::string Value::render() const {
  switch (kind_) {
    case ValueKind::kNode:
      return text_;
    case ValueKind::kString:
      return "\"" + escape_string(text_) + "\"";
    case ValueKind::kTyped:
      return "\"" + escape_string(text_) + "\"^^" + datatype_;
  }
  return text_;
}

bool Value::matches_constant(const Value& constant) const {
  if (is_typed() || constant.is_typed()) return *this == constant;
  return text_ == constant.text_;
}

std::size_t ValueHash::operator()(const Value& v) const noexcept {
  std::size_t h = std::hash<std::string>{}(v.text());
  h ^= std::hash<std::string>{}(v.datatype()) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return h * 31 + static_cast<std::size_t>(v.kind());
}

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t from, std::size_t n) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = from; i < from + n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  auto y = digits(0, 4), m = digits(5, 2), d = digits(8, 2);
  if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1) return std::nullopt;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30,
                                  31, 31, 30, 31, 30, 31};
  bool leap = (*y % 4 == 0 && *y % 100 != 0) || *y % 400 == 0;
  int max_day = kDays[*m - 1] + ((*m == 2 && leap) ? 1 : 0);
  if (*d > max_day) return std::nullopt;
  return Date{*y, *m, *d};
}

std::string escape_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_valid_node_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

TermId Dictionary::intern(const Value& value) {
  auto [it, inserted] =
      ids_.try_emplace(value, static_cast<TermId>(values_.size()));
  if (inserted) values_.push_back(&it->first);
  return it->second;
}

std::optional<TermId> Dictionary::find(const Value& value) const {
  auto it = ids_.find(value);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<TermId> Dictionary::matching(const Value& constant) const {
  std::vector<TermId> out;
  if (constant.is_typed()) {
    if (auto id = find(constant)) out.push_back(*id);
    return out;
  }
  if (auto id = find(Value::node(constant.text()))) out.push_back(*id);
  if (auto id = find(Value::string(constant.text()))) out.push_back(*id);
  return out;
}

std::optional<TermId> Dictionary::find_node(std::string_view id) const {
  return find(Value::node(std::string(id)));
}

}  // namespace fpsparql
