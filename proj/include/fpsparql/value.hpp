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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fpsparql {

inline constexpr std::string_view kXsdDate = "xsd:date";

enum class ValueKind : std::uint8_t { kNode = 0, kString = 1, kTyped = 2 };

// A term of the data model: a node reference, a plain string, or a typed
// literal such as "2009-07-19"^^xsd:date.
class Value {
 public:
  Value() = default;

  static Value node(std::string id);
  static Value string(std::string text);
  // Throws Error(kValidation) when an xsd:date lexical form is not a valid
  // calendar date.
  static Value typed(std::string lexical, std::string datatype);

  ValueKind kind() const noexcept { return kind_; }
  bool is_node() const noexcept { return kind_ == ValueKind::kNode; }
  bool is_string() const noexcept { return kind_ == ValueKind::kString; }
  bool is_typed() const noexcept { return kind_ == ValueKind::kTyped; }

  // Node id, string text, or lexical form.
  const std::string& text() const noexcept { return text_; }
  const std::string& datatype() const noexcept { return datatype_; }

  // Bare id, double-quoted escaped string, or "lexical"^^datatype.
  std::string render() const;

  // Pattern-constant matching: node ids and plain strings with the same text
  // are interchangeable ('CAiSE' matches the node CAiSE); typed literals
  // match structurally.
  bool matches_constant(const Value& constant) const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value&, const Value&) = default;

 private:
  Value(ValueKind kind, std::string text, std::string datatype)
      : kind_(kind), text_(std::move(text)), datatype_(std::move(datatype)) {}

  ValueKind kind_ = ValueKind::kNode;
  std::string text_;
  std::string datatype_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const noexcept;
};

// Calendar date parsed from YYYY-MM-DD.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;
  friend auto operator<=>(const Date&, const Date&) = default;
};

std::optional<Date> parse_date(std::string_view lexical);

// Escapes backslash, double quote, tab, newline and carriage return.
std::string escape_string(std::string_view text);

// Node ids are non-empty and contain no whitespace.
bool is_valid_node_id(std::string_view id);

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = 0xffffffffu;

// Interns every Value to a dense TermId. Lookups are safe from many threads
// as long as nobody interns concurrently.
class Dictionary {
 public:
  Dictionary() = default;
  // values_ points into ids_; moves keep the nodes, copies would not.
  Dictionary(const Dictionary&) = delete;
  Dictionary& operator=(const Dictionary&) = delete;
  Dictionary(Dictionary&&) noexcept = default;
  Dictionary& operator=(Dictionary&&) noexcept = default;

  TermId intern(const Value& value);
  std::optional<TermId> find(const Value& value) const;
  const Value& value(TermId id) const { return *values_[id]; }
  std::size_t size() const noexcept { return values_.size(); }

  // Ids of every stored value a pattern constant matches (at most two).
  std::vector<TermId> matching(const Value& constant) const;

  std::optional<TermId> find_node(std::string_view id) const;

 private:
  std::unordered_map<Value, TermId, ValueHash> ids_;
  std::vector<const Value*> values_;
};

}  // namespace fpsparql
