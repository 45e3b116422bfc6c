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

#include "fpsparql/reachability.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <unordered_set>

#include "fpsparql/error.hpp"

namespace fpsparql {

const char* to_string(ReachabilityStrategy strategy) {
  switch (strategy) {
    case ReachabilityStrategy::kTraversal: return "traversal";
    case ReachabilityStrategy::kClosure: return "closure";
    case ReachabilityStrategy::kGripp: return "gripp";
  }
  return "?";
}

ReachabilityStrategy parse_reachability(std::string_view name) {
  if (name == "traversal") return ReachabilityStrategy::kTraversal;
  if (name == "closure") return ReachabilityStrategy::kClosure;
  if (name == "gripp") return ReachabilityStrategy::kGripp;
  throw Error(ErrorKind::kUsage, "unknown reachability strategy '" + std::string(name) +
                                     "' (expected traversal, closure or gripp)");
}

bool reachable_bfs(const TripleStore& store, TermId from, TermId to) {
  if (!store.is_node(from) || !store.is_node(to)) return false;
  if (from == to) return true;
  const auto& gs = store.graph();
  std::unordered_set<TermId> seen{from};
  std::deque<TermId> queue{from};
  while (!queue.empty()) {
    TermId u = queue.front();
    queue.pop_front();
    for (RowIndex i : gs.rows_with_subject(u)) {
      TermId w = gs.row(i).object;
      if (w == to) return true;
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return false;
}

TransitiveClosure TransitiveClosure::build(const TripleStore& store, std::size_t node_guard) {
  std::vector<TermId> nodes = store.nodes();
  if (nodes.size() > node_guard) {
    throw Error(ErrorKind::kUsage, "transitive closure refused: " + std::to_string(nodes.size()) +
                                       " nodes exceed the closure node guard of " +
                                       std::to_string(node_guard));
  }
  const std::size_t n = nodes.size();
  std::unordered_map<TermId, std::uint32_t> index;
  index.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) index.emplace(nodes[i], i);

  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : store.graph().rows()) {
    auto s = index.find(e.subject);
    auto o = index.find(e.object);
    if (s != index.end() && o != index.end()) adj[s->second].push_back(o->second);
  }

  // Iterative Tarjan; components come out in reverse topological order.
  constexpr std::uint32_t kUnset = 0xffffffffU;
  std::vector<std::uint32_t> order(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(n, false);
  std::uint32_t counter = 0;
  std::uint32_t components = 0;
  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (order[root] != kUnset) continue;
    std::vector<Frame> frames{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.next++];
        if (order[w] == kUnset) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      std::uint32_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == order[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
    }
  }

  TransitiveClosure tc;
  tc.components_ = components;
  tc.words_ = (components + 63) / 64;
  tc.bits_.assign(components * tc.words_, 0);
  std::vector<std::vector<std::uint32_t>> members(components);
  for (std::uint32_t v = 0; v < n; ++v) members[comp[v]].push_back(v);
  // Successor components always carry smaller numbers, so ascending order
  // sees every successor row finished.
  for (std::uint32_t c = 0; c < components; ++c) {
    std::uint64_t* row = &tc.bits_[c * tc.words_];
    row[c / 64] |= std::uint64_t{1} << (c % 64);
    for (std::uint32_t v : members[c]) {
      for (std::uint32_t w : adj[v]) {
        std::uint32_t d = comp[w];
        if (d == c) continue;
        const std::uint64_t* other = &tc.bits_[d * tc.words_];
        for (std::size_t k = 0; k < tc.words_; ++k) row[k] |= other[k];
      }
    }
  }
  for (std::uint32_t v = 0; v < n; ++v) tc.component_.emplace(nodes[v], comp[v]);
  return tc;
}

bool TransitiveClosure::reachable(TermId from, TermId to) const {
  auto a = component_.find(from);
  auto b = component_.find(to);
  if (a == component_.end() || b == component_.end()) return false;
  return component_reaches(a->second, b->second);
}

std::size_t TransitiveClosure::pair_count() const {
  std::vector<std::size_t> sizes(components_, 0);
  for (const auto& [node, c] : component_) ++sizes[c];
  std::size_t total = 0;
  for (std::uint32_t a = 0; a < components_; ++a)
    for (std::uint32_t b = 0; b < components_; ++b)
      if (component_reaches(a, b)) total += sizes[a] * sizes[b];
  return total;
}

std::vector<std::pair<TermId, TermId>> TransitiveClosure::pairs() const {
  std::vector<std::vector<TermId>> by_component(components_);
  for (const auto& [node, c] : component_) by_component[c].push_back(node);
  std::vector<std::pair<TermId, TermId>> out;
  for (std::uint32_t a = 0; a < components_; ++a)
    for (std::uint32_t b = 0; b < components_; ++b)
      if (component_reaches(a, b))
        for (TermId u : by_component[a])
          for (TermId v : by_component[b]) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

void TransitiveClosure::save(const std::filesystem::path& file, const Dictionary& dict) const {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [u, v] : pairs()) rows.emplace_back(dict.value(u).text(), dict.value(v).text());
  std::sort(rows.begin(), rows.end());
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
  out << "from\tto\n";
  for (const auto& [u, v] : rows) out << u << '\t' << v << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + file.string());
}

TransitiveClosure TransitiveClosure::load(const std::filesystem::path& file,
                                          const TripleStore& store) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != "from\tto")
    throw Error(ErrorKind::kFormat, file.string() + ": missing 'from\\tto' header");

  std::vector<TermId> nodes = store.nodes();
  TransitiveClosure tc;
  tc.components_ = nodes.size();
  tc.words_ = (nodes.size() + 63) / 64;
  tc.bits_.assign(tc.components_ * tc.words_, 0);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) tc.component_.emplace(nodes[i], i);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorKind::kFormat, file.string() + ":" + std::to_string(line_no) + ": expected two columns");
    auto u = store.dictionary().find_node(line.substr(0, tab));
    auto v = store.dictionary().find_node(line.substr(tab + 1));
    if (!u || !v || !tc.component_.contains(*u) || !tc.component_.contains(*v))
      throw Error(ErrorKind::kFormat, file.string() + ":" + std::to_string(line_no) + ": unknown node");
    std::uint32_t a = tc.component_.at(*u);
    std::uint32_t b = tc.component_.at(*v);
    tc.bits_[a * tc.words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  }
  return tc;
}

bool reachable(const TripleStore& store, TermId from, TermId to, ReachabilityStrategy strategy,
               const TransitiveClosure* closure) {
  switch (strategy) {
    case ReachabilityStrategy::kTraversal:
      return reachable_bfs(store, from, to);
    case ReachabilityStrategy::kClosure: {
      if (closure != nullptr) return closure->reachable(from, to);
      return TransitiveClosure::build(store).reachable(from, to);
    }
    case ReachabilityStrategy::kGripp:
      throw Error(ErrorKind::kNotImplemented, "reachability strategy 'gripp' is not implemented");
  }
  return false;
}

}  // namespace fpsparql
