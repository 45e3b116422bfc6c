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

#include "fpsparql/path_engine.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fpsparql/error.hpp"
#include "fpsparql/evaluator.hpp"

namespace fpsparql {

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::kNode: return "node";
    case ElementKind::kEdge: return "edge";
    case ElementKind::kAny: return "any";
  }
  return "?";
}

namespace {

bool has_subject(const TriplePattern& p, const std::string& var) {
  return is_variable(p.subject) && as_variable(p.subject).name == var;
}

bool is_attr(const TriplePattern& p, std::string_view attr) {
  return !is_variable(p.predicate) && as_value(p.predicate).text() == attr;
}

// `?v @isA entityNode` / `?v @isA edge`: matcher directives, not stored data.
std::optional<ElementKind> directive(const TriplePattern& p) {
  if (!is_attr(p, kIsAAttribute) || is_variable(p.object)) return std::nullopt;
  const Value& v = as_value(p.object);
  if (v.is_typed()) return std::nullopt;
  if (v.text() == kEntityNodeClass) return ElementKind::kNode;
  if (v.text() == kEdgeClass) return ElementKind::kEdge;
  return std::nullopt;
}

bool is_label_constant(const TriplePattern& p) {
  return is_attr(p, kLabelAttribute) && !is_variable(p.object);
}

// The sub-query that binds `var` alone: its subject patterns (directives
// dropped, label constants dropped on request) and the filters they cover.
std::optional<SelectQuery> local_query(const std::string& var, const GroupPattern& where,
                                       bool drop_labels) {
  SelectQuery q;
  q.projection.push_back(Variable{var});
  std::set<std::string> bound{var};
  for (const auto& p : where.patterns) {
    if (!has_subject(p, var) || directive(p)) continue;
    if (drop_labels && is_label_constant(p)) continue;
    q.where.patterns.push_back(p);
    for (auto& v : p.variables()) bound.insert(std::move(v));
  }
  if (q.where.patterns.empty()) return std::nullopt;
  for (const auto& f : where.filters) {
    auto vars = f.variables();
    if (std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return bound.contains(v); }))
      q.where.filters.push_back(f);
  }
  return q;
}

std::vector<TermId> run_local(const SelectQuery& q, const TripleStore& store, bool nodes_only) {
  BindingTable t = eval_select(q, store);
  std::vector<TermId> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    TermId id = t.row(i)[0];
    if (!nodes_only || store.is_node(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains_sorted(const std::vector<TermId>& v, TermId id) {
  return std::binary_search(v.begin(), v.end(), id);
}

// Thompson construction with explicit epsilon moves.
struct Thompson {
  struct State {
    std::vector<std::uint32_t> eps;
    std::vector<PathAutomaton::Transition> leaf;
  };
  struct Fragment {
    std::uint32_t start;
    std::uint32_t end;
  };

  std::vector<State> states;
  const std::map<std::string, std::uint32_t>& leaf_index;

  explicit Thompson(const std::map<std::string, std::uint32_t>& index) : leaf_index(index) {}

  std::uint32_t add() {
    states.emplace_back();
    return static_cast<std::uint32_t>(states.size() - 1);
  }

  Fragment build(const RegexAst& ast) {
    switch (ast.kind) {
      case RegexAst::Kind::kElement: {
        Fragment f{add(), add()};
        states[f.start].leaf.push_back({leaf_index.at(ast.element.name), f.end});
        return f;
      }
      case RegexAst::Kind::kGroup:
        return build(ast.children.at(0));
      case RegexAst::Kind::kConcat: {
        Fragment f = build(ast.children.at(0));
        for (std::size_t i = 1; i < ast.children.size(); ++i) {
          Fragment next = build(ast.children[i]);
          states[f.end].eps.push_back(next.start);
          f.end = next.end;
        }
        return f;
      }
      case RegexAst::Kind::kAlternation: {
        Fragment f{add(), add()};
        for (const auto& child : ast.children) {
          Fragment c = build(child);
          states[f.start].eps.push_back(c.start);
          states[c.end].eps.push_back(f.end);
        }
        return f;
      }
      case RegexAst::Kind::kRepeat: {
        Fragment f{add(), add()};
        Fragment c = build(ast.children.at(0));
        states[f.start].eps.push_back(c.start);
        states[c.end].eps.push_back(f.end);
        if (ast.repeat != RegexAst::Repeat::kPlus) states[f.start].eps.push_back(f.end);
        if (ast.repeat != RegexAst::Repeat::kOptional) states[c.end].eps.push_back(c.start);
        return f;
      }
    }
    throw Error(ErrorKind::kValidation, "malformed path regex");
  }

  std::vector<std::uint32_t> closure(std::uint32_t s) const {
    std::vector<std::uint32_t> out{s};
    std::vector<bool> seen(states.size(), false);
    seen[s] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto t : states[out[i]].eps)
        if (!seen[t]) {
          seen[t] = true;
          out.push_back(t);
        }
    return out;
  }
};

}  // namespace

std::map<std::string, ElementConstraint> derive_constraints(const RegexAst& regex,
                                                            const GroupPattern& where) {
  std::map<std::string, ElementConstraint> out;
  for (const auto& var : regex.leaf_variables()) {
    ElementConstraint c;
    c.var = var;
    std::optional<ElementKind> kind;
    std::set<std::string> bound{var};
    for (const auto& p : where.patterns) {
      if (!has_subject(p, var)) continue;
      if (auto k = directive(p)) {
        if (kind && *kind != *k)
          throw Error(ErrorKind::kValidation,
                      "?" + var + " is declared both an entityNode and an edge");
        kind = k;
        continue;
      }
      c.local_patterns.push_back(p);
      for (auto& v : p.variables()) bound.insert(std::move(v));
      if (!is_variable(p.predicate) && p.is_attribute_pattern() && !is_variable(p.object))
        c.attr_requirements.emplace_back(as_value(p.predicate).text(), as_value(p.object));
    }
    c.kind = kind.value_or(ElementKind::kAny);
    for (const auto& f : where.filters) {
      auto vars = f.variables();
      if (std::any_of(vars.begin(), vars.end(), [&](const std::string& v) { return v == var; }) ||
          (!c.local_patterns.empty() &&
           std::all_of(vars.begin(), vars.end(),
                       [&](const std::string& v) { return bound.contains(v); })))
        c.filter_refs.push_back(f);
    }
    out.emplace(var, std::move(c));
  }
  return out;
}

std::optional<std::vector<TermId>> local_candidates(const std::string& var,
                                                    const GroupPattern& where,
                                                    const TripleStore& store) {
  auto q = local_query(var, where, false);
  if (!q) return std::nullopt;
  return run_local(*q, store, false);
}

PathAutomaton PathAutomaton::compile(const RegexAst& regex,
                                     const std::map<std::string, ElementConstraint>& constraints) {
  PathAutomaton a;
  std::map<std::string, std::uint32_t> index;
  for (const auto& var : regex.leaf_variables()) {
    index.emplace(var, static_cast<std::uint32_t>(a.leaves_.size()));
    auto it = constraints.find(var);
    if (it != constraints.end()) {
      a.leaves_.push_back(it->second);
    } else {
      ElementConstraint c;
      c.var = var;
      a.leaves_.push_back(std::move(c));
    }
  }

  Thompson t(index);
  auto frag = t.build(regex);

  // Parity of each state: which symbol kind it expects next.
  constexpr std::uint8_t kUnset = 0, kEdgeBit = 1, kNodeBit = 2;
  std::vector<std::uint8_t> parity(t.states.size(), kUnset);
  std::deque<std::uint32_t> queue{frag.start};
  parity[frag.start] = kEdgeBit;
  auto reach = [&](std::uint32_t s, std::uint8_t p) {
    if (parity[s] == p) return;
    if (parity[s] != kUnset)
      throw Error(ErrorKind::kValidation,
                  "path regex does not alternate edges and nodes: some prefix reaches the same "
                  "point after both an edge and a node");
    parity[s] = p;
    queue.push_back(s);
  };
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    std::uint8_t p = parity[s];
    for (auto e : t.states[s].eps) reach(e, p);
    for (const auto& tr : t.states[s].leaf) {
      const auto& leaf = a.leaves_[tr.leaf];
      if (p == kEdgeBit && leaf.kind == ElementKind::kNode)
        throw Error(ErrorKind::kValidation,
                    "?" + leaf.var + " is an entityNode but appears where an edge is expected");
      if (p == kNodeBit && leaf.kind == ElementKind::kEdge)
        throw Error(ErrorKind::kValidation,
                    "?" + leaf.var + " is an edge but appears where a node is expected");
      reach(tr.target, p == kEdgeBit ? kNodeBit : kEdgeBit);
    }
  }
  if (parity[frag.end] != kNodeBit)
    throw Error(ErrorKind::kValidation,
                "path regex must match words that start and end with an edge");

  // Epsilon removal: keep the start state and every leaf target.
  std::vector<std::uint32_t> keep{frag.start};
  for (const auto& s : t.states)
    for (const auto& tr : s.leaf) keep.push_back(tr.target);
  std::sort(keep.begin() + 1, keep.end());
  keep.erase(std::unique(keep.begin() + 1, keep.end()), keep.end());
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  for (std::uint32_t i = 0; i < keep.size(); ++i) renumber.emplace(keep[i], i);

  a.states_.resize(keep.size());
  for (std::uint32_t i = 0; i < keep.size(); ++i) {
    State& st = a.states_[i];
    st.parity = parity[keep[i]] == kEdgeBit ? Parity::kExpectsEdge : Parity::kExpectsNode;
    for (auto r : t.closure(keep[i])) {
      if (r == frag.end) st.accepting = true;
      for (const auto& tr : t.states[r].leaf) st.out.push_back({tr.leaf, renumber.at(tr.target)});
    }
    std::sort(st.out.begin(), st.out.end(), [](const Transition& x, const Transition& y) {
      return std::tie(x.leaf, x.target) < std::tie(y.leaf, y.target);
    });
    st.out.erase(std::unique(st.out.begin(), st.out.end(),
                             [](const Transition& x, const Transition& y) {
                               return x.leaf == y.leaf && x.target == y.target;
                             }),
                 st.out.end());
  }
  return a;
}

ElementMatcher::ElementMatcher(const PathAutomaton& automaton, const GroupPattern& where,
                               const TripleStore& store) {
  const auto& dict = store.dictionary();
  for (const auto& c : automaton.leaves()) {
    Leaf leaf;
    leaf.kind = c.kind;
    if (c.kind != ElementKind::kEdge) {
      if (auto q = local_query(c.var, where, false)) leaf.nodes = run_local(*q, store, true);
    }
    if (c.kind != ElementKind::kNode) {
      for (const auto& p : c.local_patterns) {
        if (!is_label_constant(p)) continue;
        auto ids = dict.matching(as_value(p.object));
        std::sort(ids.begin(), ids.end());
        if (!leaf.predicates) {
          leaf.predicates = ids;
        } else {
          std::vector<TermId> both;
          std::set_intersection(leaf.predicates->begin(), leaf.predicates->end(), ids.begin(),
                                ids.end(), std::back_inserter(both));
          leaf.predicates = std::move(both);
        }
      }
      if (auto q = local_query(c.var, where, true)) leaf.edge_ids = run_local(*q, store, true);
    }
    leaves_.push_back(std::move(leaf));
  }
}

bool ElementMatcher::matches_node(std::uint32_t leaf, TermId node) const {
  const Leaf& l = leaves_[leaf];
  if (l.kind == ElementKind::kEdge) return false;
  return !l.nodes || contains_sorted(*l.nodes, node);
}

bool ElementMatcher::matches_edge(std::uint32_t leaf, TermId predicate, TermId edge_id) const {
  const Leaf& l = leaves_[leaf];
  if (l.kind == ElementKind::kNode) return false;
  if (l.predicates && !contains_sorted(*l.predicates, predicate)) return false;
  if (l.edge_ids && (edge_id == kNoTerm || !contains_sorted(*l.edge_ids, edge_id))) return false;
  return true;
}

namespace {

std::uint64_t product_key(TermId node, std::uint32_t state) {
  return (static_cast<std::uint64_t>(node) << 32) | state;
}

// Which nodes can still reach an end node, answered by the configured
// reachability strategy.
class EndReach {
 public:
  EndReach(const std::vector<TermId>& ends, const SearchConfig& config, const TripleStore& store)
      : strategy_(config.reachability) {
    switch (strategy_) {
      case ReachabilityStrategy::kGripp:
        throw Error(ErrorKind::kNotImplemented, "reachability strategy 'gripp' is not implemented");
      case ReachabilityStrategy::kClosure:
        closure_ = TransitiveClosure::build(store, config.closure_node_guard);
        ends_ = ends;
        break;
      case ReachabilityStrategy::kTraversal: {
        const auto& gs = store.graph();
        std::deque<TermId> queue(ends.begin(), ends.end());
        reaching_.insert(ends.begin(), ends.end());
        while (!queue.empty()) {
          TermId w = queue.front();
          queue.pop_front();
          for (RowIndex i : gs.rows_with_object(w)) {
            TermId u = gs.row(i).subject;
            if (reaching_.insert(u).second) queue.push_back(u);
          }
        }
        break;
      }
    }
  }

  bool operator()(TermId node) {
    if (strategy_ == ReachabilityStrategy::kTraversal) return reaching_.contains(node);
    auto it = cache_.find(node);
    if (it != cache_.end()) return it->second;
    bool ok = std::any_of(ends_.begin(), ends_.end(),
                          [&](TermId e) { return closure_->reachable(node, e); });
    cache_.emplace(node, ok);
    return ok;
  }

 private:
  ReachabilityStrategy strategy_;
  std::unordered_set<TermId> reaching_;
  std::optional<TransitiveClosure> closure_;
  std::vector<TermId> ends_;
  std::unordered_map<TermId, bool> cache_;
};

struct Step {
  std::uint32_t parent;
  TermId node;
  PathEdge edge;
};

constexpr std::uint32_t kRoot = 0xffffffffU;

PathWord unwind(const std::vector<Step>& arena, std::uint32_t last) {
  PathWord w;
  for (std::uint32_t i = last; i != kRoot; i = arena[i].parent) {
    w.nodes.push_back(arena[i].node);
    if (arena[i].parent != kRoot) w.edges.push_back(arena[i].edge);
  }
  std::reverse(w.nodes.begin(), w.nodes.end());
  std::reverse(w.edges.begin(), w.edges.end());
  return w;
}

}  // namespace

SearchResult find_paths(const std::vector<TermId>& starts_in, const std::vector<TermId>& ends_in,
                        const PathAutomaton& automaton, const ElementMatcher& matcher,
                        const SearchConfig& config, const TripleStore& store) {
  if (starts_in.empty() || ends_in.empty())
    throw Error(ErrorKind::kUsage, "path search needs at least one start and one end node");
  if (config.max_edges < 1) throw Error(ErrorKind::kUsage, "max_edges must be at least 1");
  if (config.max_paths && *config.max_paths == 0)
    throw Error(ErrorKind::kUsage, "max_paths must be at least 1");

  std::vector<TermId> starts = starts_in;
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  std::vector<TermId> ends = ends_in;
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  const std::unordered_set<TermId> end_set(ends.begin(), ends.end());

  EndReach can_reach_end(ends, config, store);
  const auto& gs = store.graph();
  const auto& states = automaton.states();

  // Backward pass: fewest further edges needed to finish from (node, state),
  // for states expecting an edge. Only pairs within max_edges are kept.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> into(states.size());
  for (std::uint32_t q = 0; q < states.size(); ++q)
    for (const auto& t : states[q].out) into[t.target].emplace_back(q, t.leaf);

  std::unordered_map<std::uint64_t, std::uint32_t> dist;
  std::vector<std::pair<TermId, std::uint32_t>> level;
  for (TermId w : ends) {
    for (RowIndex i : gs.rows_with_object(w)) {
      const auto& e = gs.row(i);
      for (std::uint32_t q1 = 0; q1 < states.size(); ++q1) {
        if (!states[q1].accepting || states[q1].parity != Parity::kExpectsNode) continue;
        for (const auto& [q, leaf] : into[q1]) {
          if (!matcher.matches_edge(leaf, e.predicate, e.edge_id)) continue;
          if (dist.emplace(product_key(e.subject, q), 1).second) level.emplace_back(e.subject, q);
        }
      }
    }
  }
  for (std::uint32_t d = 1; d < config.max_edges && !level.empty(); ++d) {
    std::vector<std::pair<TermId, std::uint32_t>> next;
    for (const auto& [w, q2] : level) {
      for (const auto& [q1, node_leaf] : into[q2]) {
        if (!matcher.matches_node(node_leaf, w)) continue;
        for (const auto& [q, edge_leaf] : into[q1]) {
          for (RowIndex i : gs.rows_with_object(w)) {
            const auto& e = gs.row(i);
            if (!matcher.matches_edge(edge_leaf, e.predicate, e.edge_id)) continue;
            if (dist.emplace(product_key(e.subject, q), d + 1).second) next.emplace_back(e.subject, q);
          }
        }
      }
    }
    level = std::move(next);
  }
  auto remaining = [&](TermId node, std::uint32_t q) -> std::uint32_t {
    auto it = dist.find(product_key(node, q));
    return it == dist.end() ? 0xffffffffU : it->second;
  };

  // Forward pass, one walk length per level.
  struct Partial {
    std::uint32_t step;
    std::vector<std::uint32_t> states;
  };
  std::vector<Step> arena;
  std::vector<Partial> frontier;
  for (TermId s : starts) {
    if (!store.is_node(s)) continue;
    if (remaining(s, automaton.start()) > config.max_edges) continue;
    arena.push_back({kRoot, s, {}});
    frontier.push_back({static_cast<std::uint32_t>(arena.size() - 1), {automaton.start()}});
  }

  SearchResult result;
  std::vector<std::uint32_t> found;
  for (std::size_t length = 0; length < config.max_edges && !frontier.empty(); ++length) {
    std::vector<Partial> next;
    for (const auto& partial : frontier) {
      TermId v = arena[partial.step].node;
      for (RowIndex i : gs.rows_with_subject(v)) {
        const auto& e = gs.row(i);
        if (!can_reach_end(e.object)) continue;
        std::vector<std::uint32_t> after_edge;
        for (auto q : partial.states)
          for (const auto& t : states[q].out)
            if (matcher.matches_edge(t.leaf, e.predicate, e.edge_id)) after_edge.push_back(t.target);
        if (after_edge.empty()) continue;
        std::sort(after_edge.begin(), after_edge.end());
        after_edge.erase(std::unique(after_edge.begin(), after_edge.end()), after_edge.end());

        bool accepted = end_set.contains(e.object) &&
                        std::any_of(after_edge.begin(), after_edge.end(),
                                    [&](std::uint32_t q) { return states[q].accepting; });
        std::vector<std::uint32_t> after_node;
        if (length + 1 < config.max_edges) {
          for (auto q : after_edge)
            for (const auto& t : states[q].out)
              if (matcher.matches_node(t.leaf, e.object) &&
                  length + 1 + remaining(e.object, t.target) <= config.max_edges)
                after_node.push_back(t.target);
          std::sort(after_node.begin(), after_node.end());
          after_node.erase(std::unique(after_node.begin(), after_node.end()), after_node.end());
        }
        if (!accepted && after_node.empty()) continue;
        arena.push_back({partial.step, e.object, {e.predicate, e.edge_id}});
        auto idx = static_cast<std::uint32_t>(arena.size() - 1);
        if (accepted) found.push_back(idx);
        if (!after_node.empty()) next.push_back({idx, std::move(after_node)});
      }
    }
    frontier = std::move(next);
    if (config.max_paths && found.size() >= *config.max_paths) {
      result.truncated = found.size() > *config.max_paths || !frontier.empty();
      break;
    }
  }

  const auto& dict = store.dictionary();
  result.paths.reserve(found.size());
  for (auto idx : found) result.paths.push_back(unwind(arena, idx));
  auto text_less = [&](TermId a, TermId b) {
    if (a == b) return false;
    if (a == kNoTerm || b == kNoTerm) return a == kNoTerm;
    return dict.value(a).text() < dict.value(b).text();
  };
  std::sort(result.paths.begin(), result.paths.end(), [&](const PathWord& a, const PathWord& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
      if (a.nodes[i] != b.nodes[i]) return text_less(a.nodes[i], b.nodes[i]);
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      if (a.edges[i].predicate != b.edges[i].predicate)
        return text_less(a.edges[i].predicate, b.edges[i].predicate);
      if (a.edges[i].edge_id != b.edges[i].edge_id)
        return text_less(a.edges[i].edge_id, b.edges[i].edge_id);
    }
    return false;
  });
  if (config.max_paths && result.paths.size() > *config.max_paths) {
    result.paths.resize(*config.max_paths);
    result.truncated = true;
  }
  return result;
}

PathOutcome eval_pconstruct(const PconstructQuery& query, TripleStore& store,
                            const SearchConfig& config) {
  if (store.find_folder(query.path_name) || store.find_path_node(query.path_name))
    throw Error(ErrorKind::kConflict, "name '" + query.path_name + "' is already taken");

  auto constraints = derive_constraints(query.regex, query.where);
  auto automaton = PathAutomaton::compile(query.regex, constraints);

  auto endpoint = [&](const Variable& v) {
    if (auto q = local_query(v.name, query.where, false)) return run_local(*q, store, true);
    return store.nodes();
  };
  std::vector<TermId> starts = endpoint(query.start_var);
  std::vector<TermId> ends = endpoint(query.end_var);

  SearchResult found;
  if (!starts.empty() && !ends.empty()) {
    ElementMatcher matcher(automaton, query.where, store);
    found = find_paths(starts, ends, automaton, matcher, config, store);
  }

  PathOutcome outcome;
  outcome.name = query.path_name;
  outcome.path_count = found.paths.size();
  outcome.truncated = found.truncated;
  outcome.path_node = store.create_path_node(query.path_name, {}, std::move(found.paths));
  return outcome;
}

std::string render_path(const PathWord& word, const Dictionary& dict) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.nodes.size(); ++i) {
    if (i > 0) os << ' ' << dict.value(word.edges[i - 1].predicate).text() << ' ';
    os << dict.value(word.nodes[i]).text();
  }
  return os.str();
}

}  // namespace fpsparql
