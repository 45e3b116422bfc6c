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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpsparql/ast.hpp"
#include "fpsparql/planner.hpp"
#include "fpsparql/store.hpp"

namespace fpsparql {

// Rows of term ids, one column per variable, stored row-major.
class BindingTable {
 public:
  BindingTable() = default;
  explicit BindingTable(std::vector<std::string> vars);

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t width() const noexcept { return vars_.size(); }
  std::size_t size() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const TermId> row(std::size_t i) const {
    return {cells_.data() + i * width(), width()};
  }
  // Column index of `var`, or -1.
  int column(std::string_view var) const;

  void add_row(std::span<const TermId> row);
  void reserve(std::size_t rows) { cells_.reserve(rows * width()); }

  // Sorts rows and drops duplicates.
  void deduplicate();

  // Rows with columns reordered to `order`, sorted; for set comparison.
  std::vector<std::vector<TermId>> canonical_rows(const std::vector<std::string>& order) const;

 private:
  std::vector<std::string> vars_;
  std::vector<TermId> cells_;
  std::size_t rows_ = 0;
};

// Rows read per store while evaluating.
struct ScanCounters {
  std::size_t entity_rows = 0;
  std::size_t graph_rows = 0;
  std::size_t folder_rows = 0;

  std::size_t relationship_rows() const { return graph_rows + folder_rows; }
};

BindingTable evaluate(const PlanNode& node, const TripleStore& store,
                      const ScopeContext& scope = {}, ScanCounters* counters = nullptr);

BindingTable eval_select(const SelectQuery& query, const TripleStore& store,
                         ScanCounters* counters = nullptr, const PlanOptions& options = {});

// The inner select with its scoped variables restricted to the scope members.
BindingTable eval_apply(const ApplyQuery& query, const TripleStore& store,
                        ScanCounters* counters = nullptr, const PlanOptions& options = {});

// Looks up the bound value of a variable; nullptr when unbound.
using ValueLookup = std::function<const Value*(std::string_view)>;

// Throws Error(kEvaluation) on an unbound variable or a bad regex.
bool eval_filter(const FilterExpr& expr, const ValueLookup& lookup);
bool eval_filter(const FilterExpr& expr, const std::map<std::string, Value>& row);

struct FolderOutcome {
  TermId folder = kNoTerm;
  std::string name;
  std::size_t member_count = 0;
};

// Runs the body, materializes the folder, records its attributes.
// Throws Error(kConflict) on a taken name, Error(kEvaluation) when a member
// binding is not a node.
FolderOutcome eval_fconstruct(const FconstructQuery& query, TripleStore& store);

// Header line of variable names, then one line per row, sorted by the
// rendered cells.
std::string render_tsv(const BindingTable& table, const Dictionary& dict);

}  // namespace fpsparql
