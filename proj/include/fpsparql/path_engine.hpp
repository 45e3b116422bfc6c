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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpsparql/ast.hpp"
#include "fpsparql/reachability.hpp"
#include "fpsparql/store.hpp"

namespace fpsparql {

inline constexpr std::string_view kIsAAttribute = "@isA";
inline constexpr std::string_view kEntityNodeClass = "entityNode";
inline constexpr std::string_view kEdgeClass = "edge";

enum class ElementKind { kNode, kEdge, kAny };

const char* to_string(ElementKind kind);

// What a regex leaf variable may match, gathered from the WHERE block.
struct ElementConstraint {
  std::string var;
  ElementKind kind = ElementKind::kAny;
  // (attribute, literal) patterns on the variable, `@isA` excluded.
  std::vector<std::pair<std::string, Value>> attr_requirements;
  // Every pattern with the variable as subject, `@isA` excluded.
  std::vector<TriplePattern> local_patterns;
  // Filters whose variables are the element variable and objects of its
  // local patterns.
  std::vector<FilterExpr> filter_refs;
};

// Constraints for every regex leaf. Throws Error(kValidation) on
// contradictory `@isA` classes.
std::map<std::string, ElementConstraint> derive_constraints(const RegexAst& regex,
                                                            const GroupPattern& where);

// Candidate set of a variable: the distinct bindings of `var` under its local
// patterns and filters; nullopt when nothing constrains it.
std::optional<std::vector<TermId>> local_candidates(const std::string& var,
                                                    const GroupPattern& where,
                                                    const TripleStore& store);

enum class Parity : std::uint8_t { kExpectsEdge, kExpectsNode };

// Epsilon-free automaton over interior words e1 n1 e2 ... ek.
class PathAutomaton {
 public:
  struct Transition {
    std::uint32_t leaf;
    std::uint32_t target;
  };
  struct State {
    Parity parity = Parity::kExpectsEdge;
    bool accepting = false;
    std::vector<Transition> out;
  };

  // Throws Error(kValidation) when some word would not alternate
  // edge, node, ..., edge, or a leaf's kind clashes with its position.
  static PathAutomaton compile(const RegexAst& regex,
                               const std::map<std::string, ElementConstraint>& constraints);

  std::uint32_t start() const noexcept { return 0; }
  const std::vector<State>& states() const noexcept { return states_; }
  const std::vector<ElementConstraint>& leaves() const noexcept { return leaves_; }

  // Runs the automaton on a word given as leaf predicates: `matches(leaf, i)`
  // reports whether leaf can match symbol i.
  template <typename Matches>
  bool accepts(std::size_t length, Matches&& matches) const {
    std::vector<std::uint32_t> current{start()};
    for (std::size_t i = 0; i < length; ++i) {
      std::vector<std::uint32_t> next;
      for (auto q : current)
        for (const auto& t : states_[q].out)
          if (matches(t.leaf, i)) next.push_back(t.target);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      current = std::move(next);
      if (current.empty()) return false;
    }
    for (auto q : current)
      if (states_[q].accepting) return true;
    return false;
  }

 private:
  std::vector<State> states_;
  std::vector<ElementConstraint> leaves_;
};

struct SearchConfig {
  std::size_t max_edges = 10;
  ReachabilityStrategy reachability = ReachabilityStrategy::kTraversal;
  std::optional<std::size_t> max_paths;
  std::size_t closure_node_guard = TransitiveClosure::kDefaultNodeGuard;
};

struct SearchResult {
  std::vector<PathWord> paths;
  bool truncated = false;
};

// Leaf matchers bound to a store.
class ElementMatcher {
 public:
  ElementMatcher(const PathAutomaton& automaton, const GroupPattern& where,
                 const TripleStore& store);

  bool matches_node(std::uint32_t leaf, TermId node) const;
  bool matches_edge(std::uint32_t leaf, TermId predicate, TermId edge_id) const;

 private:
  struct Leaf {
    ElementKind kind = ElementKind::kAny;
    std::optional<std::vector<TermId>> nodes;       // sorted
    std::optional<std::vector<TermId>> predicates;  // sorted
    std::optional<std::vector<TermId>> edge_ids;    // sorted
  };
  std::vector<Leaf> leaves_;
};

// All walks from a start to an end with at most max_edges edges whose
// interior word the automaton accepts; sorted by (length, node ids).
SearchResult find_paths(const std::vector<TermId>& starts, const std::vector<TermId>& ends,
                        const PathAutomaton& automaton, const ElementMatcher& matcher,
                        const SearchConfig& config, const TripleStore& store);

struct PathOutcome {
  TermId path_node = kNoTerm;
  std::string name;
  std::size_t path_count = 0;
  bool truncated = false;
};

PathOutcome eval_pconstruct(const PconstructQuery& query, TripleStore& store,
                            const SearchConfig& config = {});

// "paper2 citedBy paper4 citedBy paper1"
std::string render_path(const PathWord& word, const Dictionary& dict);

}  // namespace fpsparql
