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
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fpsparql/store.hpp"

namespace fpsparql {

enum class ReachabilityStrategy { kTraversal, kClosure, kGripp };

const char* to_string(ReachabilityStrategy strategy);
// Accepts "traversal", "closure" and "gripp"; throws Error(kUsage) otherwise.
ReachabilityStrategy parse_reachability(std::string_view name);

// Breadth-first search over graph-store edges. Reflexive for known nodes;
// unknown ids are never reachable.
bool reachable_bfs(const TripleStore& store, TermId from, TermId to);

// Reflexive-transitive closure of the graph-store edge relation, one bit row
// per strongly connected component.
class TransitiveClosure {
 public:
  static constexpr std::size_t kDefaultNodeGuard = 20000;

  // Throws Error(kUsage) naming the guard when the store has more nodes.
  static TransitiveClosure build(const TripleStore& store,
                                 std::size_t node_guard = kDefaultNodeGuard);

  bool reachable(TermId from, TermId to) const;
  std::size_t node_count() const noexcept { return component_.size(); }
  std::size_t pair_count() const;

  // All reachable (from, to) pairs, reflexive pairs included.
  std::vector<std::pair<TermId, TermId>> pairs() const;

  // closure.tsv: header `from\tto`, one reachable pair per line, node ids
  // as text, sorted.
  void save(const std::filesystem::path& file, const Dictionary& dict) const;
  static TransitiveClosure load(const std::filesystem::path& file, const TripleStore& store);

 private:
  bool component_reaches(std::uint32_t a, std::uint32_t b) const {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }

  std::unordered_map<TermId, std::uint32_t> component_;
  std::size_t components_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Traversal answers by BFS, closure by lookup in `closure` (built on demand
// when null), GRIPP throws Error(kNotImplemented).
bool reachable(const TripleStore& store, TermId from, TermId to,
               ReachabilityStrategy strategy, const TransitiveClosure* closure = nullptr);

}  // namespace fpsparql
