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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "fpsparql/ast.hpp"
#include "fpsparql/store.hpp"

namespace fpsparql {

// Where a scan reads its rows from.
enum class ScanSource {
  kEntity,  // attribute patterns
  kGraph,   // relationship patterns
  kAny,     // variable predicate: entity and graph rows
  kFolder,  // folder store rows of a folder and its descendants
  kPath,    // graph rows whose subject is a path-node element
  kScope,   // graph rows whose subject is in a composed scope
};

const char* to_string(ScanSource source);

// Restriction applied by APPLY: `scoped_vars` may only bind to `members`.
struct ScopeContext {
  enum class Kind { kNone, kFolder, kPath, kComposite };

  Kind kind = Kind::kNone;
  std::string label;           // folder name, path name or scope text
  std::vector<TermId> folders; // kFolder: the folder and its descendants
  std::shared_ptr<const std::unordered_set<TermId>> members;
  std::set<std::string> scoped_vars;
  // No variable subject anywhere: constant subjects of this pattern class
  // must be members instead, so an empty scope still yields nothing.
  enum class Constants { kNone, kRelationship, kAttribute };
  Constants scoped_constants = Constants::kNone;

  bool active() const { return kind != Kind::kNone; }
  bool is_scoped(const TriplePattern& p) const {
    if (!active()) return false;
    if (is_variable(p.subject)) return scoped_vars.contains(as_variable(p.subject).name);
    return scoped_constants ==
           (p.is_attribute_pattern() ? Constants::kAttribute : Constants::kRelationship);
  }
};

struct PlanNode {
  enum class Kind { kScan, kJoin, kFilter, kProject };

  Kind kind = Kind::kScan;
  // kScan
  TriplePattern pattern;
  ScanSource source = ScanSource::kGraph;
  bool scoped = false;
  std::size_t estimate = 0;
  // kJoin: shared variables (empty means cartesian product)
  std::vector<std::string> join_vars;
  // kFilter
  FilterExpr filter;
  // kProject
  std::vector<std::string> project_vars;

  std::vector<PlanNode> children;
  std::vector<std::string> produced;  // variables bound by this subtree
  std::vector<std::string> warnings;  // set on the root only
};

struct PlanOptions {
  bool eliminate_redundancies = true;
  // When false every filter sits directly below the projection.
  bool push_filters = true;
  // Explicit join order (indexes into the pattern list after redundancy
  // elimination); empty means greedy smallest-cardinality-first.
  std::vector<std::size_t> join_order;
};

// Drops exact duplicates and patterns that equal another pattern up to
// variables occurring nowhere else (not in `protected_vars`, not elsewhere
// in the pattern list).
std::vector<TriplePattern> eliminate_redundancies(
    const std::vector<TriplePattern>& patterns,
    const std::set<std::string>& protected_vars);
std::vector<TriplePattern> eliminate_redundancies(const SelectQuery& query);

// Exact index count for a literal (attribute, value) pair, otherwise the size
// of the store the pattern scans.
std::size_t estimate_cardinality(const TriplePattern& pattern,
                                 const TripleStore& store);

PlanNode plan(const SelectQuery& query, const TripleStore& store,
              const ScopeContext& scope = {}, const PlanOptions& options = {});

// One operator per line, children indented by two spaces.
std::string explain(const PlanNode& root);
std::string explain(const PlanNode& root, const ScopeContext& scope);

// Variables an APPLY restricts: subjects of relationship patterns, or, when
// there are none, subjects of attribute patterns.
std::set<std::string> scoped_variables(const SelectQuery& query);

// Resolves names to folder members (recursive) or path elements and applies
// the set operations. Throws Error(kNotFound) for unknown names.
std::vector<TermId> resolve_scope(const ScopeExpr& expr, const TripleStore& store);

ScopeContext make_scope(const ScopeExpr& expr, const SelectQuery& query,
                        const TripleStore& store);

}  // namespace fpsparql
