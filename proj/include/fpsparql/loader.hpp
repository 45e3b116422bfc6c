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

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "fpsparql/store.hpp"

namespace fpsparql {

// One parsed line of the triple text format.
struct ParsedTriple {
  std::string subject;
  std::string predicate;
  Value object;
};

// Outcome of parsing one line: a triple, nothing (blank or comment), or a
// rejection reason.
struct LineResult {
  std::optional<ParsedTriple> triple;
  std::optional<std::string> error;
};

LineResult parse_triple_line(std::string_view line);

// Parses one object token (bare id, "quoted", or "lexical"^^datatype) that
// makes up the whole of `text`. Used by persistence.
std::optional<Value> parse_object_token(std::string_view text);

// Routes each line to the entity store (@-prefixed predicate) or the graph
// store. Malformed lines are reported, not fatal. Throws Error(kIo) when the
// stream fails before end of input.
LoadReport load_triples(TripleStore& store, std::istream& source);

}  // namespace fpsparql
