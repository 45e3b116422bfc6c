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
#include <filesystem>
#include <istream>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "fpsparql/evaluator.hpp"
#include "fpsparql/path_engine.hpp"
#include "fpsparql/store.hpp"

namespace fpsparql {

struct QueryOptions {
  std::size_t max_edges = 10;
  ReachabilityStrategy reachability = ReachabilityStrategy::kTraversal;
  std::optional<std::size_t> max_paths;
  bool explain = false;
};

struct QueryOutcome {
  enum class Kind { kTable, kFolder, kPath };

  Kind kind = Kind::kTable;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // rendered cells, sorted
  std::string tsv;
  std::string explain;
  std::vector<std::string> warnings;
  bool modified_store = false;
  bool truncated = false;
};

// A store plus the statement dispatcher. Reads share a lock; constructs and
// loads take it exclusively.
class Engine {
 public:
  Engine() = default;
  // Opens the store in `dir`, or starts empty when `dir` holds none.
  explicit Engine(const std::filesystem::path& dir);

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  LoadReport load(std::istream& source);
  LoadReport load_file(const std::filesystem::path& file);

  QueryOutcome execute(std::string_view text, const QueryOptions& options = {});
  std::string explain(std::string_view text, const QueryOptions& options = {}) const;

  // Folder: member ids one per line (recursive). Path node: one rendered
  // path per line.
  std::string export_node(std::string_view name) const;
  std::string stats() const;

  void persist(const std::filesystem::path& dir) const;

  const TripleStore& store() const noexcept { return store_; }
  TripleStore& store() noexcept { return store_; }

 private:
  std::string explain_locked(std::string_view text, const QueryOptions& options) const;

  TripleStore store_;
  mutable std::shared_mutex mutex_;
};

// Turns a binding table into the outcome's columns, rows and TSV text.
void fill_table(QueryOutcome& outcome, const BindingTable& table, const Dictionary& dict);

}  // namespace fpsparql
