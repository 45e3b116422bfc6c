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

#include "fpsparql/planner.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fpsparql/error.hpp"
#include "fpsparql/parser.hpp"

namespace fpsparql {

const char* to_string(ScanSource source) {
  switch (source) {
    case ScanSource::kEntity: return "entity";
    case ScanSource::kGraph: return "graph";
    case ScanSource::kAny: return "entity+graph";
    case ScanSource::kFolder: return "folder";
    case ScanSource::kPath: return "path";
    case ScanSource::kScope: return "scope";
  }
  return "?";
}

namespace {

void count_term(const Term& t, std::map<std::string, int>& counts) {
  if (is_variable(t)) ++counts[as_variable(t).name];
}

std::map<std::string, int> occurrence_counts(const std::vector<TriplePattern>& patterns) {
  std::map<std::string, int> counts;
  for (const auto& p : patterns) {
    count_term(p.subject, counts);
    count_term(p.predicate, counts);
    count_term(p.object, counts);
  }
  return counts;
}

// True when `p` maps onto `q` by renaming only fresh variables of `p`.
bool subsumed_by(const TriplePattern& p, const TriplePattern& q,
                 const std::map<std::string, int>& counts,
                 const std::set<std::string>& protected_vars) {
  auto fresh = [&](const Term& t) {
    if (!is_variable(t)) return false;
    const auto& name = as_variable(t).name;
    return counts.at(name) == 1 && !protected_vars.contains(name);
  };
  auto position = [&](const Term& a, const Term& b) { return a == b || fresh(a); };
  return position(p.subject, q.subject) && position(p.predicate, q.predicate) &&
         position(p.object, q.object);
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

bool covers(const std::vector<std::string>& bound, const std::vector<std::string>& needed) {
  return std::all_of(needed.begin(), needed.end(), [&](const std::string& v) {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  });
}

std::vector<std::string> shared_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& v : a)
    if (std::find(b.begin(), b.end(), v) != b.end()) out.push_back(v);
  return out;
}

std::vector<TermId> matching_ids(const Term& t, const Dictionary& dict) {
  return dict.matching(as_value(t));
}

PlanNode make_scan(const TriplePattern& pattern, const TripleStore& store,
                   const ScopeContext& scope) {
  PlanNode n;
  n.kind = PlanNode::Kind::kScan;
  n.pattern = pattern;
  n.estimate = estimate_cardinality(pattern, store);
  n.produced = pattern.variables();
  if (pattern.is_attribute_pattern()) {
    n.source = ScanSource::kEntity;
  } else if (pattern.is_relationship_pattern()) {
    n.source = ScanSource::kGraph;
  } else {
    n.source = ScanSource::kAny;
  }
  if (scope.is_scoped(pattern)) {
    n.scoped = true;
    if (n.source == ScanSource::kGraph) {
      switch (scope.kind) {
        case ScopeContext::Kind::kFolder: n.source = ScanSource::kFolder; break;
        case ScopeContext::Kind::kPath: n.source = ScanSource::kPath; break;
        default: n.source = ScanSource::kScope; break;
      }
    }
  }
  return n;
}

PlanNode wrap_filter(PlanNode child, const FilterExpr& filter) {
  PlanNode n;
  n.kind = PlanNode::Kind::kFilter;
  n.filter = filter;
  n.produced = child.produced;
  n.children.push_back(std::move(child));
  return n;
}

PlanNode make_join(PlanNode left, PlanNode right) {
  PlanNode n;
  n.kind = PlanNode::Kind::kJoin;
  n.join_vars = shared_vars(left.produced, right.produced);
  n.produced = merge_vars(left.produced, right.produced);
  n.children.push_back(std::move(left));
  n.children.push_back(std::move(right));
  return n;
}

void render(const PlanNode& n, int depth, const ScopeContext* scope, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  switch (n.kind) {
    case PlanNode::Kind::kProject: {
      os << "Project";
      for (const auto& v : n.project_vars) os << " ?" << v;
      break;
    }
    case PlanNode::Kind::kJoin: {
      if (n.join_vars.empty()) {
        os << "CrossProduct";
      } else {
        os << "Join on";
        for (const auto& v : n.join_vars) os << " ?" << v;
      }
      break;
    }
    case PlanNode::Kind::kFilter:
      os << "Filter " << to_text(n.filter);
      break;
    case PlanNode::Kind::kScan: {
      os << "Scan " << to_text(n.pattern) << " [" << to_string(n.source);
      if (scope != nullptr && n.scoped &&
          (n.source == ScanSource::kFolder || n.source == ScanSource::kPath ||
           n.source == ScanSource::kScope)) {
        os << "(" << scope->label << ")";
      } else if (n.scoped) {
        os << ", scoped";
      }
      os << "] est=" << n.estimate;
      break;
    }
  }
  os << '\n';
  for (const auto& c : n.children) render(c, depth + 1, scope, os);
}

}  // namespace

std::vector<TriplePattern> eliminate_redundancies(const std::vector<TriplePattern>& patterns,
                                                  const std::set<std::string>& protected_vars) {
  std::vector<TriplePattern> out;
  for (const auto& p : patterns)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);

  bool changed = true;
  while (changed) {
    changed = false;
    auto counts = occurrence_counts(out);
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (i == j) continue;
        if (subsumed_by(out[i], out[j], counts, protected_vars)) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<TriplePattern> eliminate_redundancies(const SelectQuery& query) {
  std::set<std::string> keep;
  for (const auto& v : query.projection) keep.insert(v.name);
  for (const auto& f : query.where.filters)
    for (auto& v : f.variables()) keep.insert(std::move(v));
  return eliminate_redundancies(query.where.patterns, keep);
}

std::size_t estimate_cardinality(const TriplePattern& pattern, const TripleStore& store) {
  const auto& dict = store.dictionary();
  if (pattern.is_attribute_pattern()) {
    if (is_variable(pattern.object)) return store.entities().size();
    std::size_t total = 0;
    for (TermId a : matching_ids(pattern.predicate, dict))
      for (TermId v : matching_ids(pattern.object, dict))
        total += store.entities().subjects_with(a, v).size();
    return total;
  }
  return store.graph().size();
}

PlanNode plan(const SelectQuery& query, const TripleStore& store, const ScopeContext& scope,
              const PlanOptions& options) {
  std::vector<TriplePattern> patterns =
      options.eliminate_redundancies ? eliminate_redundancies(query) : query.where.patterns;
  if (patterns.empty()) throw Error(ErrorKind::kValidation, "query has no triple patterns");

  std::vector<PlanNode> scans;
  scans.reserve(patterns.size());
  for (const auto& p : patterns) scans.push_back(make_scan(p, store, scope));

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < scans.size(); ++i) {
    const auto& p = scans[i].pattern;
    if (!is_variable(p.subject) || !is_variable(p.predicate) || !is_variable(p.object)) continue;
    bool joinable = false;
    for (std::size_t j = 0; j < scans.size() && !joinable; ++j)
      joinable = j != i && !shared_vars(scans[i].produced, scans[j].produced).empty();
    if (!joinable)
      warnings.push_back("pattern '" + to_text(p) + "' has no joinable neighbor; full store scan");
  }

  std::vector<std::size_t> order;
  if (!options.join_order.empty()) {
    order = options.join_order;
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i || sorted.size() != scans.size())
        throw Error(ErrorKind::kUsage, "join order is not a permutation of the patterns");
  } else {
    std::vector<bool> used(scans.size(), false);
    std::vector<std::string> bound;
    for (std::size_t step = 0; step < scans.size(); ++step) {
      std::size_t best = scans.size();
      bool best_connected = false;
      for (std::size_t i = 0; i < scans.size(); ++i) {
        if (used[i]) continue;
        bool connected = step == 0 || !shared_vars(bound, scans[i].produced).empty();
        if (best == scans.size() || (connected && !best_connected) ||
            (connected == best_connected && scans[i].estimate < scans[best].estimate)) {
          best = i;
          best_connected = connected;
        }
      }
      used[best] = true;
      order.push_back(best);
      bound = merge_vars(bound, scans[best].produced);
    }
  }

  std::vector<bool> placed(query.where.filters.size(), false);
  auto attach_filters = [&](PlanNode node) {
    if (!options.push_filters) return node;
    for (std::size_t f = 0; f < query.where.filters.size(); ++f) {
      if (placed[f]) continue;
      if (covers(node.produced, query.where.filters[f].variables())) {
        node = wrap_filter(std::move(node), query.where.filters[f]);
        placed[f] = true;
      }
    }
    return node;
  };

  PlanNode root = attach_filters(std::move(scans[order[0]]));
  for (std::size_t k = 1; k < order.size(); ++k) {
    PlanNode right = attach_filters(std::move(scans[order[k]]));
    root = attach_filters(make_join(std::move(root), std::move(right)));
  }
  for (std::size_t f = 0; f < query.where.filters.size(); ++f)
    if (!placed[f]) root = wrap_filter(std::move(root), query.where.filters[f]);

  PlanNode project;
  project.kind = PlanNode::Kind::kProject;
  for (const auto& v : query.projection) project.project_vars.push_back(v.name);
  project.produced = project.project_vars;
  project.children.push_back(std::move(root));
  project.warnings = std::move(warnings);
  return project;
}

std::string explain(const PlanNode& root) {
  std::ostringstream os;
  render(root, 0, nullptr, os);
  return os.str();
}

std::string explain(const PlanNode& root, const ScopeContext& scope) {
  std::ostringstream os;
  render(root, 0, &scope, os);
  return os.str();
}

std::set<std::string> scoped_variables(const SelectQuery& query) {
  std::set<std::string> out;
  for (const auto& p : query.where.patterns)
    if (!p.is_attribute_pattern() && is_variable(p.subject))
      out.insert(as_variable(p.subject).name);
  if (out.empty())
    for (const auto& p : query.where.patterns)
      if (is_variable(p.subject)) out.insert(as_variable(p.subject).name);
  return out;
}

std::vector<TermId> resolve_scope(const ScopeExpr& expr, const TripleStore& store) {
  if (expr.kind == ScopeExpr::Kind::kNamed) {
    if (auto f = store.find_folder(expr.name)) return store.members_of(*f, true);
    if (auto p = store.find_path_node(expr.name)) return store.elements_of(*p);
    throw Error(ErrorKind::kNotFound, "unknown folder or path node '" + expr.name + "'");
  }
  auto lhs = resolve_scope(expr.operands.at(0), store);
  auto rhs = resolve_scope(expr.operands.at(1), store);
  std::vector<TermId> out;
  switch (expr.kind) {
    case ScopeExpr::Kind::kUnion:
      std::set_union(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
      break;
    case ScopeExpr::Kind::kIntersect:
      std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                            std::back_inserter(out));
      break;
    case ScopeExpr::Kind::kMinus:
      std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                          std::back_inserter(out));
      break;
    case ScopeExpr::Kind::kNamed:
      break;
  }
  return out;
}

ScopeContext make_scope(const ScopeExpr& expr, const SelectQuery& query,
                        const TripleStore& store) {
  ScopeContext scope;
  auto members = resolve_scope(expr, store);
  scope.members = std::make_shared<const std::unordered_set<TermId>>(members.begin(),
                                                                     members.end());
  scope.scoped_vars = scoped_variables(query);
  if (scope.scoped_vars.empty()) {
    bool relationship = std::any_of(query.where.patterns.begin(), query.where.patterns.end(),
                                    [](const TriplePattern& p) { return !p.is_attribute_pattern(); });
    scope.scoped_constants = relationship ? ScopeContext::Constants::kRelationship
                                          : ScopeContext::Constants::kAttribute;
  }
  if (expr.kind == ScopeExpr::Kind::kNamed) {
    scope.label = expr.name;
    if (auto f = store.find_folder(expr.name)) {
      scope.kind = ScopeContext::Kind::kFolder;
      scope.folders = store.folder_closure(*f);
    } else {
      scope.kind = ScopeContext::Kind::kPath;
    }
  } else {
    scope.kind = ScopeContext::Kind::kComposite;
    scope.label = to_text(expr);
  }
  return scope;
}

}  // namespace fpsparql
