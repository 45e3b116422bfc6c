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

#include "fpsparql/evaluator.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_map>

#include "fpsparql/error.hpp"

namespace fpsparql {

// ---------------------------------------------------------------------------
// BindingTable

BindingTable::BindingTable(std::vector<std::string> vars) : vars_(std::move(vars)) {}

int BindingTable::column(std::string_view var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return static_cast<int>(i);
  return -1;
}

void BindingTable::add_row(std::span<const TermId> row) {
  cells_.insert(cells_.end(), row.begin(), row.end());
  ++rows_;
}

void BindingTable::deduplicate() {
  if (rows_ <= 1) return;
  if (width() == 0) {
    rows_ = 1;
    return;
  }
  std::vector<std::size_t> idx(rows_);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto ra = row(a);
    auto rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<TermId> out;
  out.reserve(cells_.size());
  std::size_t kept = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto r = row(idx[k]);
    if (k > 0) {
      auto prev = row(idx[k - 1]);
      if (std::equal(r.begin(), r.end(), prev.begin())) continue;
    }
    out.insert(out.end(), r.begin(), r.end());
    ++kept;
  }
  cells_ = std::move(out);
  rows_ = kept;
}

std::vector<std::vector<TermId>> BindingTable::canonical_rows(
    const std::vector<std::string>& order) const {
  std::vector<int> cols;
  for (const auto& v : order) {
    int c = column(v);
    if (c < 0) throw Error(ErrorKind::kUsage, "table has no column ?" + v);
    cols.push_back(c);
  }
  std::vector<std::vector<TermId>> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    std::vector<TermId> projected;
    projected.reserve(cols.size());
    for (int c : cols) projected.push_back(r[static_cast<std::size_t>(c)]);
    out.push_back(std::move(projected));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Filters

namespace {

bool is_numeric_datatype(std::string_view dt) {
  static constexpr std::string_view kNumeric[] = {
      "xsd:integer", "xsd:decimal", "xsd:double", "xsd:float", "xsd:int", "xsd:long",
      "http://www.w3.org/2001/XMLSchema#integer",
      "http://www.w3.org/2001/XMLSchema#decimal",
      "http://www.w3.org/2001/XMLSchema#double"};
  return std::find(std::begin(kNumeric), std::end(kNumeric), dt) != std::end(kNumeric);
}

bool is_date_datatype(std::string_view dt) {
  return dt == "xsd:date" || dt == "http://www.w3.org/2001/XMLSchema#date";
}

template <typename T>
bool apply_order(CompareOp op, const T& a, const T& b) {
  switch (op) {
    case CompareOp::kLess: return a < b;
    case CompareOp::kLessEqual: return a <= b;
    case CompareOp::kGreater: return a > b;
    case CompareOp::kGreaterEqual: return a >= b;
    case CompareOp::kEqual: return a == b;
    case CompareOp::kNotEqual: return a != b;
  }
  return false;
}

bool compare_values(const Value& a, CompareOp op, const Value& b) {
  if (op == CompareOp::kEqual) return a == b;
  if (op == CompareOp::kNotEqual) return a != b;
  if (a.is_typed() != b.is_typed()) return false;
  if (!a.is_typed()) return apply_order(op, a.text(), b.text());
  if (a.datatype() != b.datatype()) return false;
  if (is_date_datatype(a.datatype())) {
    auto da = parse_date(a.text());
    auto db = parse_date(b.text());
    if (!da || !db) return false;
    return apply_order(op, *da, *db);
  }
  if (is_numeric_datatype(a.datatype())) {
    char* end_a = nullptr;
    char* end_b = nullptr;
    double na = std::strtod(a.text().c_str(), &end_a);
    double nb = std::strtod(b.text().c_str(), &end_b);
    if (*end_a != '\0' || *end_b != '\0' || a.text().empty() || b.text().empty()) return false;
    return apply_order(op, na, nb);
  }
  return apply_order(op, a.text(), b.text());
}

const std::regex& compiled(const std::string& pattern) {
  thread_local std::unordered_map<std::string, std::regex> cache;
  auto it = cache.find(pattern);
  if (it != cache.end()) return it->second;
  try {
    return cache.emplace(pattern, std::regex(pattern, std::regex::ECMAScript)).first->second;
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::kEvaluation, "invalid regex '" + pattern + "': " + e.what());
  }
}

const Value& resolve(const Term& t, const ValueLookup& lookup) {
  if (!is_variable(t)) return as_value(t);
  const Value* v = lookup(as_variable(t).name);
  if (v == nullptr) throw Error(ErrorKind::kEvaluation, "unbound variable ?" + as_variable(t).name);
  return *v;
}

}  // namespace

bool eval_filter(const FilterExpr& expr, const ValueLookup& lookup) {
  switch (expr.kind) {
    case FilterExpr::Kind::kCompare:
      return compare_values(resolve(expr.lhs, lookup), expr.op, resolve(expr.rhs, lookup));
    case FilterExpr::Kind::kRegex: {
      const Value* v = lookup(expr.regex_var.name);
      if (v == nullptr) throw Error(ErrorKind::kEvaluation, "unbound variable ?" + expr.regex_var.name);
      return std::regex_search(v->text(), compiled(expr.pattern));
    }
    case FilterExpr::Kind::kAnd:
      for (const auto& e : expr.operands)
        if (!eval_filter(e, lookup)) return false;
      return true;
    case FilterExpr::Kind::kOr:
      for (const auto& e : expr.operands)
        if (eval_filter(e, lookup)) return true;
      return false;
  }
  return false;
}

bool eval_filter(const FilterExpr& expr, const std::map<std::string, Value>& row) {
  return eval_filter(expr, [&](std::string_view name) -> const Value* {
    auto it = row.find(std::string(name));
    return it == row.end() ? nullptr : &it->second;
  });
}

// ---------------------------------------------------------------------------
// Operators

namespace {

struct Slot {
  bool variable = false;
  std::size_t column = 0;
  std::vector<TermId> constants;
};

// Binds one pattern against candidate rows.
class PatternMatcher {
 public:
  PatternMatcher(const TriplePattern& pattern, const Dictionary& dict)
      : vars_(pattern.variables()) {
    slots_[0] = make_slot(pattern.subject, dict);
    slots_[1] = make_slot(pattern.predicate, dict);
    slots_[2] = make_slot(pattern.object, dict);
    scratch_.resize(vars_.size());
  }

  const std::vector<std::string>& vars() const { return vars_; }
  bool impossible() const {
    for (const auto& s : slots_)
      if (!s.variable && s.constants.empty()) return true;
    return false;
  }
  const Slot& slot(int i) const { return slots_[i]; }

  void offer(TermId s, TermId p, TermId o, BindingTable& out) {
    std::fill(scratch_.begin(), scratch_.end(), kNoTerm);
    const TermId values[3] = {s, p, o};
    for (int i = 0; i < 3; ++i) {
      const Slot& slot = slots_[i];
      if (!slot.variable) {
        if (std::find(slot.constants.begin(), slot.constants.end(), values[i]) ==
            slot.constants.end())
          return;
        continue;
      }
      TermId& cell = scratch_[slot.column];
      if (cell != kNoTerm && cell != values[i]) return;
      cell = values[i];
    }
    out.add_row(scratch_);
  }

 private:
  Slot make_slot(const Term& t, const Dictionary& dict) {
    Slot s;
    if (is_variable(t)) {
      s.variable = true;
      auto it = std::find(vars_.begin(), vars_.end(), as_variable(t).name);
      s.column = static_cast<std::size_t>(it - vars_.begin());
    } else {
      s.constants = dict.matching(as_value(t));
    }
    return s;
  }

  std::vector<std::string> vars_;
  Slot slots_[3];
  std::vector<TermId> scratch_;
};

class Evaluator {
 public:
  Evaluator(const TripleStore& store, const ScopeContext& scope, ScanCounters* counters)
      : store_(store), scope_(scope), counters_(counters ? counters : &ignored_) {}

  BindingTable run(const PlanNode& n) {
    switch (n.kind) {
      case PlanNode::Kind::kScan: return scan(n);
      case PlanNode::Kind::kJoin: return join(run(n.children.at(0)), run(n.children.at(1)));
      case PlanNode::Kind::kFilter: return filter(run(n.children.at(0)), n.filter);
      case PlanNode::Kind::kProject: return project(run(n.children.at(0)), n.project_vars);
    }
    throw Error(ErrorKind::kEvaluation, "unknown plan operator");
  }

 private:
  const std::unordered_set<TermId>* members(const PlanNode& n) const {
    return n.scoped && scope_.members ? scope_.members.get() : nullptr;
  }

  void scan_entity(const PlanNode& n, PatternMatcher& m, BindingTable& out) {
    const auto& es = store_.entities();
    const auto* allowed = members(n);
    auto emit = [&](RowIndex i) {
      ++counters_->entity_rows;
      const auto& r = es.row(i);
      if (allowed && !allowed->contains(r.subject)) return;
      m.offer(r.subject, r.attribute, r.value, out);
    };
    const Slot& s = m.slot(0);
    const Slot& p = m.slot(1);
    const Slot& o = m.slot(2);
    if (!s.variable) {
      for (TermId id : s.constants)
        for (RowIndex i : es.rows_with_subject(id)) emit(i);
      return;
    }
    if (!p.variable && !o.variable) {
      for (TermId a : p.constants)
        for (TermId v : o.constants)
          for (TermId subj : es.subjects_with(a, v)) {
            ++counters_->entity_rows;
            if (allowed && !allowed->contains(subj)) continue;
            m.offer(subj, a, v, out);
          }
      return;
    }
    if (allowed) {
      std::size_t by_members = 0;
      for (TermId id : *allowed) by_members += es.rows_with_subject(id).size();
      std::size_t by_attr = es.size();
      if (!p.variable) {
        by_attr = 0;
        for (TermId a : p.constants) by_attr += es.rows_with_attribute(a).size();
      }
      if (by_members < by_attr) {
        for (TermId id : sorted_members(*allowed))
          for (RowIndex i : es.rows_with_subject(id)) emit(i);
        return;
      }
    }
    if (!p.variable) {
      for (TermId a : p.constants)
        for (RowIndex i : es.rows_with_attribute(a)) emit(i);
      return;
    }
    for (RowIndex i = 0; i < es.size(); ++i) emit(i);
  }

  void scan_graph(const PlanNode& n, PatternMatcher& m, BindingTable& out) {
    const auto& gs = store_.graph();
    const auto* allowed = members(n);
    auto emit = [&](RowIndex i) {
      ++counters_->graph_rows;
      const auto& r = gs.row(i);
      if (allowed && !allowed->contains(r.subject)) return;
      m.offer(r.subject, r.predicate, r.object, out);
    };
    const Slot& s = m.slot(0);
    const Slot& p = m.slot(1);
    const Slot& o = m.slot(2);
    if (!s.variable) {
      for (TermId id : s.constants)
        for (RowIndex i : gs.rows_with_subject(id)) emit(i);
      return;
    }
    if (allowed) {
      // Scoped scans read only the members' rows.
      for (TermId id : sorted_members(*allowed))
        for (RowIndex i : gs.rows_with_subject(id)) emit(i);
      return;
    }
    if (!o.variable) {
      for (TermId id : o.constants)
        for (RowIndex i : gs.rows_with_object(id)) emit(i);
      return;
    }
    if (!p.variable) {
      for (TermId id : p.constants)
        for (RowIndex i : gs.rows_with_predicate(id)) emit(i);
      return;
    }
    for (RowIndex i = 0; i < gs.size(); ++i) emit(i);
  }

  void scan_folder(PatternMatcher& m, BindingTable& out) {
    auto marker = store_.dictionary().find_node(kMemberOfMarker);
    const Slot& p = m.slot(1);
    for (TermId f : scope_.folders) {
      const auto& rec = store_.folder(f);
      auto emit = [&](RowIndex i) {
        ++counters_->folder_rows;
        const auto& r = rec.member_rows[i];
        if (marker && r.predicate == *marker) return;
        m.offer(r.subject, r.predicate, r.object, out);
      };
      if (!p.variable) {
        for (TermId id : p.constants) {
          auto it = rec.rows_by_predicate.find(id);
          if (it == rec.rows_by_predicate.end()) continue;
          for (RowIndex i : it->second) emit(i);
        }
      } else {
        for (RowIndex i = 0; i < rec.member_rows.size(); ++i) emit(i);
      }
    }
  }

  static std::vector<TermId> sorted_members(const std::unordered_set<TermId>& set) {
    std::vector<TermId> v(set.begin(), set.end());
    std::sort(v.begin(), v.end());
    return v;
  }

  BindingTable scan(const PlanNode& n) {
    PatternMatcher m(n.pattern, store_.dictionary());
    BindingTable out(m.vars());
    if (m.impossible()) return out;
    switch (n.source) {
      case ScanSource::kEntity: scan_entity(n, m, out); break;
      case ScanSource::kGraph:
      case ScanSource::kPath:
      case ScanSource::kScope: scan_graph(n, m, out); break;
      case ScanSource::kAny:
        scan_entity(n, m, out);
        scan_graph(n, m, out);
        break;
      case ScanSource::kFolder: scan_folder(m, out); break;
    }
    out.deduplicate();
    return out;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<TermId>& k) const noexcept {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (TermId t : k) h = (h ^ t) * 0x100000001b3ULL;
      return h;
    }
  };

  static BindingTable join(const BindingTable& left, const BindingTable& right) {
    std::vector<std::string> vars = left.vars();
    std::vector<std::size_t> extra;  // right columns appended to the output
    std::vector<std::pair<std::size_t, std::size_t>> keys;  // (left col, right col)
    for (std::size_t c = 0; c < right.width(); ++c) {
      int lc = left.column(right.vars()[c]);
      if (lc >= 0) {
        keys.emplace_back(static_cast<std::size_t>(lc), c);
      } else {
        extra.push_back(c);
        vars.push_back(right.vars()[c]);
      }
    }
    BindingTable out(vars);
    std::vector<TermId> row(vars.size());
    auto emit = [&](std::span<const TermId> l, std::span<const TermId> r) {
      std::copy(l.begin(), l.end(), row.begin());
      for (std::size_t k = 0; k < extra.size(); ++k) row[l.size() + k] = r[extra[k]];
      out.add_row(row);
    };
    if (keys.empty()) {
      out.reserve(left.size() * right.size());
      for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) emit(left.row(i), right.row(j));
      return out;
    }
    std::unordered_map<std::vector<TermId>, std::vector<std::size_t>, KeyHash> index;
    std::vector<TermId> key(keys.size());
    for (std::size_t j = 0; j < right.size(); ++j) {
      auto r = right.row(j);
      for (std::size_t k = 0; k < keys.size(); ++k) key[k] = r[keys[k].second];
      index[key].push_back(j);
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      auto l = left.row(i);
      for (std::size_t k = 0; k < keys.size(); ++k) key[k] = l[keys[k].first];
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (std::size_t j : it->second) emit(l, right.row(j));
    }
    return out;
  }

  BindingTable filter(const BindingTable& in, const FilterExpr& expr) {
    BindingTable out(in.vars());
    const auto& dict = store_.dictionary();
    std::size_t current = 0;
    ValueLookup lookup = [&](std::string_view name) -> const Value* {
      int c = in.column(name);
      if (c < 0) return nullptr;
      return &dict.value(in.row(current)[static_cast<std::size_t>(c)]);
    };
    for (current = 0; current < in.size(); ++current)
      if (eval_filter(expr, lookup)) out.add_row(in.row(current));
    return out;
  }

  static BindingTable project(const BindingTable& in, const std::vector<std::string>& vars) {
    std::vector<std::size_t> cols;
    for (const auto& v : vars) {
      int c = in.column(v);
      if (c < 0) throw Error(ErrorKind::kEvaluation, "projected variable ?" + v + " is unbound");
      cols.push_back(static_cast<std::size_t>(c));
    }
    BindingTable out(vars);
    out.reserve(in.size());
    std::vector<TermId> row(cols.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      auto r = in.row(i);
      for (std::size_t k = 0; k < cols.size(); ++k) row[k] = r[cols[k]];
      out.add_row(row);
    }
    out.deduplicate();
    return out;
  }

  const TripleStore& store_;
  const ScopeContext& scope_;
  ScanCounters ignored_;
  ScanCounters* counters_;
};

}  // namespace

BindingTable evaluate(const PlanNode& node, const TripleStore& store, const ScopeContext& scope,
                      ScanCounters* counters) {
  return Evaluator(store, scope, counters).run(node);
}

BindingTable eval_select(const SelectQuery& query, const TripleStore& store,
                         ScanCounters* counters, const PlanOptions& options) {
  ScopeContext none;
  return evaluate(plan(query, store, none, options), store, none, counters);
}

BindingTable eval_apply(const ApplyQuery& query, const TripleStore& store,
                        ScanCounters* counters, const PlanOptions& options) {
  ScopeContext scope = make_scope(query.scope, query.inner, store);
  return evaluate(plan(query.inner, store, scope, options), store, scope, counters);
}

FolderOutcome eval_fconstruct(const FconstructQuery& query, TripleStore& store) {
  std::vector<std::pair<std::string, Value>> attrs;
  for (const auto& p : query.attr_patterns)
    attrs.emplace_back(as_value(p.predicate).text(), as_value(p.object));

  FolderOutcome outcome;
  outcome.name = query.folder_name;
  if (!query.child_folders.empty()) {
    outcome.folder = store.create_folder_of_folders(query.folder_name, attrs, query.child_folders);
    outcome.member_count = store.members_of(outcome.folder, true).size();
    return outcome;
  }
  if (store.find_folder(query.folder_name) || store.find_path_node(query.folder_name))
    throw Error(ErrorKind::kConflict, "name '" + query.folder_name + "' is already taken");

  SelectQuery body;
  body.projection.push_back(*query.member_var);
  body.where = query.body;
  BindingTable table = eval_select(body, store);
  std::vector<TermId> members;
  members.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    TermId id = table.row(i)[0];
    if (!store.dictionary().value(id).is_node())
      throw Error(ErrorKind::kEvaluation, "folder member ?" + query.member_var->name +
                                              " bound to a literal: " +
                                              store.dictionary().value(id).render());
    members.push_back(id);
  }
  outcome.folder = store.create_folder(query.folder_name, attrs, std::move(members));
  outcome.member_count = store.folder(outcome.folder).members.size();
  return outcome;
}

std::string render_tsv(const BindingTable& table, const Dictionary& dict) {
  std::ostringstream os;
  for (std::size_t c = 0; c < table.width(); ++c) os << (c ? "\t" : "") << table.vars()[c];
  os << '\n';
  std::vector<std::vector<std::string>> rows;
  rows.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<std::string> cells;
    for (TermId t : table.row(i)) cells.push_back(dict.value(t).render());
    rows.push_back(std::move(cells));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "\t" : "") << r[c];
    os << '\n';
  }
  return os.str();
}

}  // namespace fpsparql
