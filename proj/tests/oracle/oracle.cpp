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

#include "oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <regex>
#include <tuple>

namespace fpsparql::oracle {

FactBase::FactBase(const TripleStore& store) {
  const Dictionary& dict = store.dictionary();
  std::set<Fact> seen;
  for (const auto& r : store.entities().rows())
    seen.insert({Value::node(dict.value(r.subject).text()), dict.value(r.attribute).text(),
                 dict.value(r.value)});
  for (const auto& r : store.graph().rows())
    seen.insert({Value::node(dict.value(r.subject).text()), dict.value(r.predicate).text(),
                 Value::node(dict.value(r.object).text())});
  facts_.assign(seen.begin(), seen.end());
  for (const auto& f : facts_) by_subject_[f.subject.text()].push_back(f);
}

const std::vector<Fact>& FactBase::about(const std::string& subject) const {
  auto it = by_subject_.find(subject);
  return it == by_subject_.end() ? none_ : it->second;
}

bool constant_matches(const Value& constant, const Value& value) {
  if (constant.is_typed() || value.is_typed()) return constant == value;
  return constant.text() == value.text();
}

namespace {

const Value* lookup(const Term& t, const Binding& row) {
  if (!is_variable(t)) return &as_value(t);
  auto it = row.find(as_variable(t).name);
  return it == row.end() ? nullptr : &it->second;
}

bool numeric(const std::string& dt) {
  return dt == "xsd:integer" || dt == "xsd:decimal" || dt == "xsd:double" ||
         dt == "xsd:float" || dt == "xsd:int" || dt == "xsd:long";
}

// -1, 0, 1, or 2 when the pair is not ordered.
int order(const Value& a, const Value& b) {
  if (a.is_typed() != b.is_typed()) return 2;
  if (a.is_typed() && a.datatype() != b.datatype()) return 2;
  if (a.is_typed() && a.datatype() == "xsd:date") {
    int ya, ma, da, yb, mb, db;
    if (std::sscanf(a.text().c_str(), "%d-%d-%d", &ya, &ma, &da) != 3) return 2;
    if (std::sscanf(b.text().c_str(), "%d-%d-%d", &yb, &mb, &db) != 3) return 2;
    long ka = ya * 10000L + ma * 100 + da;
    long kb = yb * 10000L + mb * 100 + db;
    return ka < kb ? -1 : ka > kb ? 1 : 0;
  }
  if (a.is_typed() && numeric(a.datatype())) {
    char* ea;
    char* eb;
    double x = std::strtod(a.text().c_str(), &ea);
    double y = std::strtod(b.text().c_str(), &eb);
    if (a.text().empty() || b.text().empty() || *ea || *eb) return 2;
    return x < y ? -1 : x > y ? 1 : 0;
  }
  int c = a.text().compare(b.text());
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

}  // namespace

bool filter_holds(const FilterExpr& expr, const Binding& row) {
  switch (expr.kind) {
    case FilterExpr::Kind::kAnd:
      return std::all_of(expr.operands.begin(), expr.operands.end(),
                         [&](const FilterExpr& e) { return filter_holds(e, row); });
    case FilterExpr::Kind::kOr:
      return std::any_of(expr.operands.begin(), expr.operands.end(),
                         [&](const FilterExpr& e) { return filter_holds(e, row); });
    case FilterExpr::Kind::kRegex: {
      auto it = row.find(expr.regex_var.name);
      if (it == row.end()) return false;
      return std::regex_search(it->second.text(), std::regex(expr.pattern));
    }
    case FilterExpr::Kind::kCompare: {
      const Value* a = lookup(expr.lhs, row);
      const Value* b = lookup(expr.rhs, row);
      if (!a || !b) return false;
      if (expr.op == CompareOp::kEqual) return *a == *b;
      if (expr.op == CompareOp::kNotEqual) return !(*a == *b);
      int c = order(*a, *b);
      if (c == 2) return false;
      switch (expr.op) {
        case CompareOp::kLess: return c < 0;
        case CompareOp::kLessEqual: return c <= 0;
        case CompareOp::kGreater: return c > 0;
        case CompareOp::kGreaterEqual: return c >= 0;
        default: return false;
      }
    }
  }
  return false;
}

namespace {

bool unify(const Term& t, const Value& v, Binding& row, std::vector<std::string>& bound) {
  if (!is_variable(t)) return constant_matches(as_value(t), v);
  const std::string& name = as_variable(t).name;
  auto it = row.find(name);
  if (it != row.end()) return it->second == v;
  row.emplace(name, v);
  bound.push_back(name);
  return true;
}

void extend(const GroupPattern& where, std::size_t i, Binding& row, const FactBase& facts,
            std::vector<Binding>& out) {
  if (i == where.patterns.size()) {
    for (const auto& f : where.filters)
      if (!filter_holds(f, row)) return;
    out.push_back(row);
    return;
  }
  const TriplePattern& p = where.patterns[i];
  const std::vector<Fact>* candidates = &facts.all();
  if (const Value* s = lookup(p.subject, row)) {
    if (s->is_typed()) return;
    candidates = &facts.about(s->text());
  }
  for (const Fact& f : *candidates) {
    std::vector<std::string> bound;
    if (unify(p.subject, f.subject, row, bound) &&
        unify(p.predicate, Value::node(f.predicate), row, bound) &&
        unify(p.object, f.object, row, bound))
      extend(where, i + 1, row, facts, out);
    for (const auto& b : bound) row.erase(b);
  }
}

}  // namespace

std::vector<Binding> bindings(const GroupPattern& where, const FactBase& facts) {
  std::vector<Binding> out;
  Binding row;
  extend(where, 0, row, facts, out);
  return out;
}

RowSet project(const std::vector<Binding>& rows, const std::vector<Variable>& vars) {
  RowSet out;
  for (const auto& b : rows) {
    Row r;
    for (const auto& v : vars) r.push_back(b.at(v.name));
    out.insert(std::move(r));
  }
  return out;
}

RowSet select(const SelectQuery& query, const FactBase& facts) {
  return project(bindings(query.where, facts), query.projection);
}

namespace {

void folder_members(const TripleStore& store, TermId folder, std::set<TermId>& visited,
                    std::set<std::string>& out) {
  if (!visited.insert(folder).second) return;
  const FolderRecord& rec = store.folder(folder);
  for (TermId m : rec.members) out.insert(store.text(m));
  for (TermId c : rec.children) folder_members(store, c, visited, out);
}

}  // namespace

std::set<std::string> scope_members(const ScopeExpr& scope, const TripleStore& store) {
  std::set<std::string> out;
  if (scope.kind == ScopeExpr::Kind::kNamed) {
    if (auto f = store.find_folder(scope.name)) {
      std::set<TermId> visited;
      folder_members(store, *f, visited, out);
    } else if (auto p = store.find_path_node(scope.name)) {
      for (const auto& w : store.path_node(*p).paths)
        for (TermId n : w.nodes) out.insert(store.text(n));
    }
    return out;
  }
  auto a = scope_members(scope.operands[0], store);
  auto b = scope_members(scope.operands[1], store);
  for (const auto& x : a) {
    bool in_b = b.contains(x);
    if (scope.kind == ScopeExpr::Kind::kUnion ||
        (scope.kind == ScopeExpr::Kind::kIntersect && in_b) ||
        (scope.kind == ScopeExpr::Kind::kMinus && !in_b))
      out.insert(x);
  }
  if (scope.kind == ScopeExpr::Kind::kUnion) out.insert(b.begin(), b.end());
  return out;
}

std::set<std::string> scoped_vars(const SelectQuery& query) {
  std::set<std::string> rel, attr;
  for (const auto& p : query.where.patterns) {
    if (!is_variable(p.subject)) continue;
    bool attribute = !is_variable(p.predicate) && as_value(p.predicate).text().starts_with('@');
    (attribute ? attr : rel).insert(as_variable(p.subject).name);
  }
  return rel.empty() ? attr : rel;
}

RowSet apply(const SelectQuery& inner, const std::set<std::string>& members,
             const FactBase& facts) {
  auto vars = scoped_vars(inner);
  if (vars.empty()) {
    // Only constant subjects: they must all be members, else nothing survives.
    std::set<std::string> rel, attr;
    for (const auto& p : inner.where.patterns) {
      bool attribute = !is_variable(p.predicate) && as_value(p.predicate).text().starts_with('@');
      (attribute ? attr : rel).insert(as_value(p.subject).text());
    }
    for (const auto& c : rel.empty() ? attr : rel)
      if (!members.contains(c)) return {};
  }
  std::vector<Binding> kept;
  for (auto& b : bindings(inner.where, facts)) {
    bool ok = true;
    for (const auto& v : vars) {
      const Value& x = b.at(v);
      if (!x.is_node() || !members.contains(x.text())) ok = false;
    }
    if (ok) kept.push_back(std::move(b));
  }
  return project(kept, inner.projection);
}

RowSet apply(const ApplyQuery& query, const TripleStore& store, const FactBase& facts) {
  return apply(query.inner, scope_members(query.scope, store), facts);
}

std::vector<std::string> dump(const TripleStore& store) {
  const Dictionary& d = store.dictionary();
  auto t = [&](TermId id) { return id == kNoTerm ? std::string("-") : d.value(id).render(); };
  std::vector<std::string> out;
  for (const auto& r : store.entities().rows())
    out.push_back("E " + t(r.subject) + " " + t(r.attribute) + " " + t(r.value));
  for (const auto& r : store.graph().rows())
    out.push_back("G " + t(r.subject) + " " + t(r.predicate) + " " + t(r.object) + " " +
                  t(r.edge_id));
  for (TermId f : store.folder_ids()) {
    const FolderRecord& rec = store.folder(f);
    std::string head = "F " + t(f) + " " + rec.name;
    for (TermId m : rec.members) out.push_back(head + " member " + t(m));
    for (TermId c : rec.children) out.push_back(head + " child " + t(c));
    for (const auto& r : rec.member_rows)
      out.push_back(head + " row " + t(r.subject) + " " + t(r.predicate) + " " + t(r.object));
  }
  for (TermId p : store.path_node_ids()) {
    const PathRecord& rec = store.path_node(p);
    std::string head = "P " + t(p) + " " + rec.name;
    for (std::size_t i = 0; i < rec.paths.size(); ++i) {
      std::string line = head + " path " + std::to_string(i);
      const PathWord& w = rec.paths[i];
      for (std::size_t k = 0; k < w.nodes.size(); ++k) {
        line += " " + t(w.nodes[k]);
        if (k < w.edges.size()) line += " " + t(w.edges[k].predicate) + "/" + t(w.edges[k].edge_id);
      }
      out.push_back(line);
    }
    for (TermId e : rec.elements) out.push_back(head + " element " + t(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RowSet decode(const BindingTable& table, const std::vector<Variable>& vars,
              const Dictionary& dict) {
  std::vector<std::string> order;
  for (const auto& v : vars) order.push_back(v.name);
  RowSet out;
  for (const auto& r : table.canonical_rows(order)) {
    Row row;
    for (TermId t : r) row.push_back(dict.value(t));
    out.insert(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Paths

namespace {

using Positions = std::set<std::size_t>;

Positions match_from(const RegexAst& r, const std::vector<Symbol>& w, const Positions& from,
                     const LeafTest& leaf) {
  switch (r.kind) {
    case RegexAst::Kind::kElement: {
      Positions out;
      for (auto i : from)
        if (i < w.size() && leaf(r.element.name, w[i])) out.insert(i + 1);
      return out;
    }
    case RegexAst::Kind::kGroup:
      return match_from(r.children[0], w, from, leaf);
    case RegexAst::Kind::kConcat: {
      Positions cur = from;
      for (const auto& c : r.children) cur = match_from(c, w, cur, leaf);
      return cur;
    }
    case RegexAst::Kind::kAlternation: {
      Positions out;
      for (const auto& c : r.children) {
        auto p = match_from(c, w, from, leaf);
        out.insert(p.begin(), p.end());
      }
      return out;
    }
    case RegexAst::Kind::kRepeat: {
      const RegexAst& c = r.children[0];
      if (r.repeat == RegexAst::Repeat::kOptional) {
        Positions out = from;
        auto p = match_from(c, w, from, leaf);
        out.insert(p.begin(), p.end());
        return out;
      }
      Positions reached = r.repeat == RegexAst::Repeat::kStar ? from : Positions{};
      Positions frontier = match_from(c, w, from, leaf);
      while (!frontier.empty()) {
        Positions fresh;
        for (auto i : frontier)
          if (reached.insert(i).second) fresh.insert(i);
        frontier = fresh.empty() ? Positions{} : match_from(c, w, fresh, leaf);
      }
      return reached;
    }
  }
  return {};
}

}  // namespace

bool word_matches(const RegexAst& regex, const std::vector<Symbol>& word, const LeafTest& leaf) {
  return match_from(regex, word, {0}, leaf).contains(word.size());
}

std::vector<Symbol> interior_word(const Walk& walk) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < walk.edges.size(); ++i) {
    if (i > 0) out.push_back({false, walk.nodes[i], {}, {}});
    out.push_back({true, {}, walk.edges[i].first, walk.edges[i].second});
  }
  return out;
}

namespace {

GroupPattern local_block(const std::string& var, const GroupPattern& where) {
  GroupPattern g;
  std::set<std::string> vars;
  for (const auto& p : where.patterns) {
    if (!is_variable(p.subject) || as_variable(p.subject).name != var) continue;
    if (!is_variable(p.predicate) && (as_value(p.predicate).text() == "@isA" ||
                                      as_value(p.predicate).text() == "@label"))
      continue;
    g.patterns.push_back(p);
    for (const auto& v : p.variables()) vars.insert(v);
  }
  for (const auto& f : where.filters) {
    auto fv = f.variables();
    if (!fv.empty() && std::all_of(fv.begin(), fv.end(),
                                   [&](const std::string& v) { return vars.contains(v); }))
      g.filters.push_back(f);
  }
  return g;
}

struct LeafRule {
  int kind = 0;  // 0 any, 1 node, 2 edge
  std::vector<Value> labels;
  std::optional<std::set<std::string>> subjects;
};

}  // namespace

std::set<std::string> local_nodes(const std::string& var, const GroupPattern& where,
                                  const FactBase& facts) {
  std::set<std::string> out;
  GroupPattern g = local_block(var, where);
  if (g.patterns.empty()) return out;
  for (const auto& b : bindings(g, facts)) {
    const Value& v = b.at(var);
    if (v.is_node()) out.insert(v.text());
  }
  return out;
}

LeafTest leaf_semantics(const GroupPattern& where, const FactBase& facts) {
  std::map<std::string, LeafRule> rules;
  for (const auto& p : where.patterns) {
    if (!is_variable(p.subject) || is_variable(p.predicate) || is_variable(p.object)) continue;
    const std::string& var = as_variable(p.subject).name;
    const std::string& pred = as_value(p.predicate).text();
    if (pred == "@isA") rules[var].kind = as_value(p.object).text() == "edge" ? 2 : 1;
    if (pred == "@label") rules[var].labels.push_back(as_value(p.object));
  }
  std::set<std::string> subjects;
  for (const auto& p : where.patterns)
    if (is_variable(p.subject)) subjects.insert(as_variable(p.subject).name);
  for (const auto& var : subjects) {
    GroupPattern g = local_block(var, where);
    if (!g.patterns.empty()) rules[var].subjects = local_nodes(var, where, facts);
  }
  return [rules](const std::string& var, const Symbol& s) {
    auto it = rules.find(var);
    if (it == rules.end()) return true;
    const LeafRule& r = it->second;
    if (r.kind == 1 && s.edge) return false;
    if (r.kind == 2 && !s.edge) return false;
    if (s.edge) {
      for (const auto& l : r.labels)
        if (!constant_matches(l, Value::node(s.predicate))) return false;
      if (r.subjects && (s.edge_id.empty() || !r.subjects->contains(s.edge_id))) return false;
      return true;
    }
    if (!r.labels.empty()) return false;
    return !r.subjects || r.subjects->contains(s.node);
  };
}

namespace {

struct Adjacency {
  std::map<std::string, std::vector<std::tuple<std::string, std::string, std::string>>> out;
};

void dfs(const Adjacency& adj, Walk& w, const std::set<std::string>& ends, const RegexAst& regex,
         const LeafTest& leaf, std::size_t max_edges, std::set<Walk>& found) {
  if (!w.edges.empty() && ends.contains(w.nodes.back()) &&
      word_matches(regex, interior_word(w), leaf))
    found.insert(w);
  if (w.edges.size() == max_edges) return;
  auto it = adj.out.find(w.nodes.back());
  if (it == adj.out.end()) return;
  for (const auto& [pred, edge_id, obj] : it->second) {
    w.edges.emplace_back(pred, edge_id);
    w.nodes.push_back(obj);
    dfs(adj, w, ends, regex, leaf, max_edges, found);
    w.edges.pop_back();
    w.nodes.pop_back();
  }
}

}  // namespace

std::set<Walk> walks(const TripleStore& store, const std::set<std::string>& starts,
                     const std::set<std::string>& ends, const RegexAst& regex,
                     const LeafTest& leaf, std::size_t max_edges) {
  Adjacency adj;
  for (const auto& r : store.graph().rows())
    adj.out[store.text(r.subject)].emplace_back(
        store.text(r.predicate), r.edge_id == kNoTerm ? std::string() : store.text(r.edge_id),
        store.text(r.object));
  std::set<Walk> found;
  for (const auto& s : starts) {
    Walk w;
    w.nodes.push_back(s);
    dfs(adj, w, ends, regex, leaf, max_edges, found);
  }
  return found;
}

Walk decode(const PathWord& word, const Dictionary& dict) {
  Walk w;
  for (TermId n : word.nodes) w.nodes.push_back(dict.value(n).text());
  for (const auto& e : word.edges)
    w.edges.emplace_back(dict.value(e.predicate).text(),
                         e.edge_id == kNoTerm ? std::string() : dict.value(e.edge_id).text());
  return w;
}

std::vector<std::vector<bool>> reachability_matrix(const TripleStore& store,
                                                   const std::vector<std::string>& nodes) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  const std::size_t n = nodes.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (const auto& r : store.graph().rows())
    m[index.at(store.text(r.subject))][index.at(store.text(r.object))] = true;
  // Warshall.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

}  // namespace fpsparql::oracle
