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

// Property drivers shared by the unit suite (small counts) and the
// acceptance binary (full counts). Each returns a report instead of
// asserting so both harnesses can print their own verdicts.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fpsparql/engine.hpp"

namespace fpsparql::props {

struct Report {
  bool ok = true;
  std::size_t cases = 0;
  std::size_t nonempty = 0;  // cases whose oracle answer was not empty
  std::vector<std::string> failures;  // first few only

  void fail(std::string what);
  void merge(const Report& other);
  std::string summary() const;
};

// Random stores against the nested-loop oracle: plain, filters at the root,
// redundancy elimination off, a shuffled join order, and APPLY over random
// folders (scoping law plus set composition).
Report planner_soundness(std::uint64_t seed, std::size_t stores, std::size_t queries_per_store);

// find_paths under both reachability strategies against the exhaustive walk
// oracle, plus sortedness and max_edges monotonicity.
Report path_completeness(std::uint64_t seed, std::size_t graphs, std::size_t regexes);

// BFS, transitive closure and a Warshall matrix agree on every pair; closure
// is reflexive and transitive.
Report reachability_agreement(std::uint64_t seed, std::size_t dags);

struct StatementResult {
  std::string name;
  bool ok = true;
  double seconds = 0;
  std::size_t rows = 0;  // result rows, folder members or paths
  std::string detail;
};

// Runs a corpus in order on `engine`, checking every statement against the
// oracle (selects, applies, folder members, stored paths).
std::vector<StatementResult> run_corpus(Engine& engine, bool events);

// apply(A union B) = apply(A) u apply(B), apply(A minus A) = {},
// apply(A intersect A) = apply(A), for every pair of folders in the store and
// every query in `queries`.
Report composition_laws(const TripleStore& store, const std::vector<SelectQuery>& queries);

}  // namespace fpsparql::props
