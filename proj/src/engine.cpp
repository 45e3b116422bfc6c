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

#include "fpsparql/engine.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "fpsparql/error.hpp"
#include "fpsparql/loader.hpp"
#include "fpsparql/parser.hpp"
#include "fpsparql/persist.hpp"
#include "fpsparql/planner.hpp"

namespace fpsparql {

namespace {

std::string tsv_text(const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "\t" : "") << columns[c];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "\t" : "") << r[c];
    os << '\n';
  }
  return os.str();
}

void fill_summary(QueryOutcome& outcome, std::vector<std::string> columns,
                  std::vector<std::string> row) {
  outcome.columns = std::move(columns);
  outcome.rows = {std::move(row)};
  outcome.tsv = tsv_text(outcome.columns, outcome.rows);
}

void indent(std::ostringstream& os, const std::string& block, int depth) {
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << line << '\n';
}

SearchConfig search_config(const QueryOptions& options) {
  SearchConfig cfg;
  cfg.max_edges = options.max_edges;
  cfg.reachability = options.reachability;
  cfg.max_paths = options.max_paths;
  return cfg;
}

}  // namespace

void fill_table(QueryOutcome& outcome, const BindingTable& table, const Dictionary& dict) {
  outcome.kind = QueryOutcome::Kind::kTable;
  outcome.columns = table.vars();
  outcome.rows.clear();
  outcome.rows.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<std::string> cells;
    cells.reserve(table.width());
    for (TermId t : table.row(i)) cells.push_back(dict.value(t).render());
    outcome.rows.push_back(std::move(cells));
  }
  std::sort(outcome.rows.begin(), outcome.rows.end());
  outcome.tsv = tsv_text(outcome.columns, outcome.rows);
}

Engine::Engine(const std::filesystem::path& dir) {
  if (is_store_directory(dir)) store_ = open_store(dir);
}

LoadReport Engine::load(std::istream& source) {
  std::unique_lock lock(mutex_);
  return load_triples(store_, source);
}

LoadReport Engine::load_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  return load(in);
}

QueryOutcome Engine::execute(std::string_view text, const QueryOptions& options) {
  QueryAst ast = parse(text);
  QueryOutcome outcome;
  if (options.explain) outcome.explain = explain(text, options);

  if (auto* select = std::get_if<SelectQuery>(&ast)) {
    std::shared_lock lock(mutex_);
    PlanNode root = plan(*select, store_);
    outcome.warnings = root.warnings;
    fill_table(outcome, evaluate(root, store_), store_.dictionary());
  } else if (auto* apply = std::get_if<ApplyQuery>(&ast)) {
    std::shared_lock lock(mutex_);
    ScopeContext scope = make_scope(apply->scope, apply->inner, store_);
    PlanNode root = plan(apply->inner, store_, scope);
    outcome.warnings = root.warnings;
    fill_table(outcome, evaluate(root, store_, scope), store_.dictionary());
  } else if (auto* fc = std::get_if<FconstructQuery>(&ast)) {
    std::unique_lock lock(mutex_);
    FolderOutcome f = eval_fconstruct(*fc, store_);
    outcome.kind = QueryOutcome::Kind::kFolder;
    outcome.modified_store = true;
    fill_summary(outcome, {"folder", "node", "members"},
                 {f.name, store_.text(f.folder), std::to_string(f.member_count)});
  } else if (auto* pc = std::get_if<PconstructQuery>(&ast)) {
    std::unique_lock lock(mutex_);
    PathOutcome p = eval_pconstruct(*pc, store_, search_config(options));
    outcome.kind = QueryOutcome::Kind::kPath;
    outcome.modified_store = true;
    outcome.truncated = p.truncated;
    if (p.truncated)
      outcome.warnings.push_back("path search stopped at --max-paths " +
                                 std::to_string(*options.max_paths) + "; results truncated");
    fill_summary(outcome, {"path_node", "node", "paths"},
                 {p.name, store_.text(p.path_node), std::to_string(p.path_count)});
  }
  return outcome;
}

std::string Engine::explain(std::string_view text, const QueryOptions& options) const {
  std::shared_lock lock(mutex_);
  return explain_locked(text, options);
}

std::string Engine::explain_locked(std::string_view text, const QueryOptions& options) const {
  QueryAst ast = parse(text);
  std::ostringstream os;
  if (auto* select = std::get_if<SelectQuery>(&ast)) {
    os << fpsparql::explain(plan(*select, store_));
  } else if (auto* apply = std::get_if<ApplyQuery>(&ast)) {
    ScopeContext scope = make_scope(apply->scope, apply->inner, store_);
    os << "Apply " << scope.label << " scoping";
    for (const auto& v : scope.scoped_vars) os << " ?" << v;
    os << '\n';
    indent(os, fpsparql::explain(plan(apply->inner, store_, scope), scope), 1);
  } else if (auto* fc = std::get_if<FconstructQuery>(&ast)) {
    os << "FolderConstruct " << fc->folder_name << '\n';
    if (!fc->child_folders.empty()) {
      os << "  Children";
      for (const auto& c : fc->child_folders) os << ' ' << c;
      os << '\n';
    } else {
      SelectQuery body;
      body.projection.push_back(*fc->member_var);
      body.where = fc->body;
      indent(os, fpsparql::explain(plan(body, store_)), 1);
    }
  } else if (auto* pc = std::get_if<PconstructQuery>(&ast)) {
    auto constraints = derive_constraints(pc->regex, pc->where);
    auto automaton = PathAutomaton::compile(pc->regex, constraints);
    os << "PathConstruct " << pc->path_name << " max_edges=" << options.max_edges
       << " reachability=" << to_string(options.reachability) << '\n';
    os << "  Regex " << to_text(pc->regex) << " states=" << automaton.states().size() << '\n';
    for (const auto& leaf : automaton.leaves())
      os << "    Element ?" << leaf.var << " " << to_string(leaf.kind) << '\n';
    for (const auto* endpoint : {&pc->start_var, &pc->end_var}) {
      os << "  " << (endpoint == &pc->start_var ? "Start" : "End") << " ?" << endpoint->name << '\n';
      SelectQuery local;
      local.projection.push_back(*endpoint);
      for (const auto& p : pc->where.patterns)
        if (is_variable(p.subject) && as_variable(p.subject).name == endpoint->name)
          local.where.patterns.push_back(p);
      if (!local.where.patterns.empty()) indent(os, fpsparql::explain(plan(local, store_)), 2);
    }
  }
  return os.str();
}

std::string Engine::export_node(std::string_view name) const {
  std::shared_lock lock(mutex_);
  std::ostringstream os;
  if (auto f = store_.find_folder(name)) {
    std::vector<std::string> ids;
    for (TermId m : store_.members_of(*f, true)) ids.push_back(store_.text(m));
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) os << id << '\n';
    return os.str();
  }
  if (auto p = store_.find_path_node(name)) {
    for (const auto& w : store_.path_node(*p).paths) os << render_path(w, store_.dictionary()) << '\n';
    return os.str();
  }
  throw Error(ErrorKind::kNotFound, "unknown folder or path node '" + std::string(name) + "'");
}

std::string Engine::stats() const {
  std::shared_lock lock(mutex_);
  std::size_t paths = 0;
  for (TermId p : store_.path_node_ids()) paths += store_.path_node(p).paths.size();
  std::ostringstream os;
  os << "metric\tvalue\n";
  os << "entity_rows\t" << store_.entities().size() << '\n';
  os << "graph_rows\t" << store_.graph().size() << '\n';
  os << "nodes\t" << store_.node_count() << '\n';
  os << "terms\t" << store_.dictionary().size() << '\n';
  os << "folders\t" << store_.folder_ids().size() << '\n';
  os << "path_nodes\t" << store_.path_node_ids().size() << '\n';
  os << "paths\t" << paths << '\n';
  return os.str();
}

void Engine::persist(const std::filesystem::path& dir) const {
  std::shared_lock lock(mutex_);
  persist_store(store_, dir);
}

}  // namespace fpsparql
