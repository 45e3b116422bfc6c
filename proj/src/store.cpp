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

#include "fpsparql/store.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "fpsparql/error.hpp"

namespace fpsparql {

namespace {

std::span<const RowIndex> lookup(
    const std::unordered_map<TermId, std::vector<RowIndex>>& index, TermId key) {
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

std::uint64_t pack(TermId a, TermId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void sort_unique(std::vector<TermId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// EntityStore

std::size_t EntityStore::Hash::operator()(const EntityTriple& t) const noexcept {
  return mix(mix(t.subject, t.attribute), t.value);
}

bool EntityStore::insert(const EntityTriple& row) {
  if (!present_.insert(row).second) return false;
  auto index = static_cast<RowIndex>(rows_.size());
  rows_.push_back(row);
  by_subject_[row.subject].push_back(index);
  by_attribute_[row.attribute].push_back(index);
  by_attribute_value_[pack(row.attribute, row.value)].push_back(row.subject);
  return true;
}

std::span<const RowIndex> EntityStore::rows_with_subject(TermId subject) const {
  return lookup(by_subject_, subject);
}

std::span<const RowIndex> EntityStore::rows_with_attribute(
    TermId attribute) const {
  return lookup(by_attribute_, attribute);
}

std::span<const TermId> EntityStore::subjects_with(TermId attribute,
                                                   TermId value) const {
  auto it = by_attribute_value_.find(pack(attribute, value));
  if (it == by_attribute_value_.end()) return {};
  return it->second;
}

bool EntityStore::contains(const EntityTriple& row) const {
  return present_.contains(row);
}

// ---------------------------------------------------------------------------
// GraphStore

std::size_t GraphStore::Hash::operator()(const GraphEdge& e) const noexcept {
  return mix(mix(mix(e.subject, e.predicate), e.object), e.edge_id);
}

bool GraphStore::insert(const GraphEdge& row) {
  if (!present_.insert(row).second) return false;
  auto index = static_cast<RowIndex>(rows_.size());
  rows_.push_back(row);
  by_subject_[row.subject].push_back(index);
  by_predicate_[row.predicate].push_back(index);
  by_object_[row.object].push_back(index);
  return true;
}

std::span<const RowIndex> GraphStore::rows_with_subject(TermId subject) const {
  return lookup(by_subject_, subject);
}

std::span<const RowIndex> GraphStore::rows_with_predicate(
    TermId predicate) const {
  return lookup(by_predicate_, predicate);
}

std::span<const RowIndex> GraphStore::rows_with_object(TermId object) const {
  return lookup(by_object_, object);
}

bool GraphStore::contains(const GraphEdge& row) const {
  return present_.contains(row);
}

// ---------------------------------------------------------------------------
// Path element rows

std::vector<PathElementRow> element_rows(const PathRecord& record) {
  std::vector<PathElementRow> out;
  for (std::uint32_t p = 0; p < record.paths.size(); ++p) {
    const PathWord& word = record.paths[p];
    for (std::uint32_t s = 0; s < word.edges.size(); ++s) {
      out.push_back({record.id, p, s, word.nodes[s], word.edges[s].predicate,
                     word.nodes[s + 1], word.edges[s].edge_id});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// TripleStore

TripleStore::TripleStore() = default;

void TripleStore::mark_node(TermId id) {
  if (id >= is_node_.size()) is_node_.resize(std::max<std::size_t>(id + 1, is_node_.size() * 2), false);
  if (!is_node_[id]) {
    is_node_[id] = true;
    ++node_count_;
  }
}

std::vector<TermId> TripleStore::nodes() const {
  std::vector<TermId> out;
  out.reserve(node_count_);
  for (TermId i = 0; i < is_node_.size(); ++i) {
    if (is_node_[i]) out.push_back(i);
  }
  return out;
}

void TripleStore::insert_attribute(const AttributeRow& row) {
  if (!is_valid_node_id(row.subject)) {
    throw Error(ErrorKind::kValidation, "invalid subject id '" + row.subject + "'");
  }
  if (!is_attribute_name(row.attribute) || !is_valid_node_id(row.attribute)) {
    throw Error(ErrorKind::kValidation,
                "attribute name must start with '@': '" + row.attribute + "'");
  }
  insert_attribute(intern_node(row.subject), intern_node(row.attribute),
                   dict_.intern(row.value));
}

bool TripleStore::insert_attribute(TermId subject, TermId attribute,
                                   TermId value) {
  if (!is_attribute_name(text(attribute))) {
    throw Error(ErrorKind::kValidation,
                "attribute name must start with '@': '" + text(attribute) + "'");
  }
  mark_node(subject);
  return entities_.insert({subject, attribute, value});
}

void TripleStore::insert_relationship(const RelationshipRow& row) {
  for (const std::string* id : {&row.subject, &row.predicate, &row.object}) {
    if (!is_valid_node_id(*id)) {
      throw Error(ErrorKind::kValidation, "invalid id '" + *id + "'");
    }
  }
  if (row.predicate.front() == kAttributePrefix) {
    throw Error(ErrorKind::kValidation,
                "relationship predicate must not start with '@': '" +
                    row.predicate + "'");
  }
  if (row.edge_id && !is_valid_node_id(*row.edge_id)) {
    throw Error(ErrorKind::kValidation, "invalid edge id '" + *row.edge_id + "'");
  }
  GraphEdge edge{intern_node(row.subject), intern_node(row.predicate),
                 intern_node(row.object),
                 row.edge_id ? intern_node(*row.edge_id) : kNoTerm};
  insert_relationship(edge);
}

bool TripleStore::insert_relationship(const GraphEdge& edge) {
  if (text(edge.predicate).empty() ||
      text(edge.predicate).front() == kAttributePrefix) {
    throw Error(ErrorKind::kValidation,
                "relationship predicate must not start with '@': '" +
                    text(edge.predicate) + "'");
  }
  if (edge.edge_id != kNoTerm) {
    // A reified edge is labelled with its predicate in the entity store.
    insert_attribute(edge.edge_id, intern_node(kLabelAttribute),
                     edge.predicate);
  }
  mark_node(edge.subject);
  mark_node(edge.object);
  return graph_.insert(edge);
}

std::vector<std::string> TripleStore::scan_by_attribute(
    std::string_view attribute, const Value& value) const {
  std::vector<std::string> out;
  auto attr = dict_.find_node(attribute);
  if (!attr) return out;
  for (TermId v : dict_.matching(value)) {
    for (TermId s : entities_.subjects_with(*attr, v)) out.push_back(text(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RelationshipRow> TripleStore::out_edges(
    std::string_view subject) const {
  std::vector<RelationshipRow> out;
  auto id = dict_.find_node(subject);
  if (!id) return out;
  for (RowIndex i : graph_.rows_with_subject(*id)) {
    const GraphEdge& e = graph_.row(i);
    RelationshipRow row{text(e.subject), text(e.predicate), text(e.object),
                        std::nullopt};
    if (e.edge_id != kNoTerm) row.edge_id = text(e.edge_id);
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Folders

void TripleStore::check_name_free(const std::string& name) const {
  if (!is_valid_node_id(name)) {
    throw Error(ErrorKind::kValidation, "invalid node name '" + name + "'");
  }
  if (folder_names_.contains(name) || path_names_.contains(name)) {
    throw Error(ErrorKind::kConflict, "name '" + name + "' is already bound");
  }
}

TermId TripleStore::fresh_node_id(std::string_view prefix) {
  for (;;) {
    std::string candidate =
        "_:" + std::string(prefix) + std::to_string(next_generated_++);
    auto existing = dict_.find_node(candidate);
    if (!existing) return intern_node(candidate);
  }
}

void TripleStore::index_folder_rows(FolderRecord& record) {
  record.rows_by_predicate.clear();
  for (RowIndex i = 0; i < record.member_rows.size(); ++i) {
    record.rows_by_predicate[record.member_rows[i].predicate].push_back(i);
  }
}

TermId TripleStore::create_folder(
    const std::string& name,
    const std::vector<std::pair<std::string, Value>>& attrs,
    const std::vector<std::string>& members) {
  std::vector<TermId> ids;
  ids.reserve(members.size());
  for (const auto& m : members) {
    if (!is_valid_node_id(m)) {
      throw Error(ErrorKind::kValidation, "invalid member id '" + m + "'");
    }
    ids.push_back(intern_node(m));
  }
  return create_folder(name, attrs, std::move(ids));
}

TermId TripleStore::create_folder(
    const std::string& name,
    const std::vector<std::pair<std::string, Value>>& attrs,
    std::vector<TermId> members) {
  check_name_free(name);
  for (const auto& [attr, value] : attrs) {
    if (!is_attribute_name(attr)) {
      throw Error(ErrorKind::kValidation,
                  "folder attribute must start with '@': '" + attr + "'");
    }
  }
  for (TermId m : members) {
    if (!dict_.value(m).is_node()) {
      throw Error(ErrorKind::kValidation,
                  "folder member must be a node id: " + dict_.value(m).render());
    }
  }
  sort_unique(members);

  FolderRecord record;
  record.id = fresh_node_id("folder");
  record.name = name;
  TermId marker = intern_node(kMemberOfMarker);
  for (TermId m : members) {
    std::size_t first = record.member_rows.size();
    for (RowIndex i : graph_.rows_with_subject(m)) {
      GraphEdge e = graph_.row(i);
      e.edge_id = kNoTerm;
      record.member_rows.push_back(e);
    }
    // Reified duplicates of one (s, p, o) collapse to a single folder row.
    auto begin = record.member_rows.begin() + static_cast<std::ptrdiff_t>(first);
    std::sort(begin, record.member_rows.end(), [](const GraphEdge& a, const GraphEdge& b) {
      return std::tie(a.predicate, a.object) < std::tie(b.predicate, b.object);
    });
    record.member_rows.erase(std::unique(begin, record.member_rows.end()),
                             record.member_rows.end());
    record.member_rows.push_back({m, marker, record.id, kNoTerm});
  }
  record.members = std::move(members);
  index_folder_rows(record);

  insert_attribute(record.id, intern_node(kNameAttribute),
                   dict_.intern(Value::string(name)));
  for (const auto& [attr, value] : attrs) {
    insert_attribute(record.id, intern_node(attr), dict_.intern(value));
  }
  TermId id = record.id;
  folder_names_.emplace(name, id);
  folders_.emplace(id, std::move(record));
  return id;
}

TermId TripleStore::create_folder_of_folders(
    const std::string& name,
    const std::vector<std::pair<std::string, Value>>& attrs,
    const std::vector<std::string>& children) {
  std::vector<TermId> child_ids;
  for (const auto& child : children) {
    if (child == name) {
      throw Error(ErrorKind::kCycle,
                  "folder '" + name + "' cannot be nested under itself");
    }
  }
  check_name_free(name);
  for (const auto& child : children) {
    auto id = find_folder(child);
    if (!id) throw Error(ErrorKind::kNotFound, "unknown folder '" + child + "'");
    child_ids.push_back(*id);
  }
  for (const auto& [attr, value] : attrs) {
    if (!is_attribute_name(attr)) {
      throw Error(ErrorKind::kValidation,
                  "folder attribute must start with '@': '" + attr + "'");
    }
  }
  sort_unique(child_ids);

  FolderRecord record;
  record.id = fresh_node_id("folder");
  record.name = name;
  record.children = child_ids;
  index_folder_rows(record);

  insert_attribute(record.id, intern_node(kNameAttribute),
                   dict_.intern(Value::string(name)));
  for (const auto& [attr, value] : attrs) {
    insert_attribute(record.id, intern_node(attr), dict_.intern(value));
  }
  TermId part_of = intern_node(kPartOfPredicate);
  for (TermId child : child_ids) {
    insert_relationship(GraphEdge{child, part_of, record.id, kNoTerm});
  }
  TermId id = record.id;
  folder_names_.emplace(name, id);
  folders_.emplace(id, std::move(record));
  return id;
}

std::optional<TermId> TripleStore::find_folder(std::string_view name) const {
  auto it = folder_names_.find(std::string(name));
  if (it == folder_names_.end()) return std::nullopt;
  return it->second;
}

const FolderRecord& TripleStore::folder(TermId id) const {
  auto it = folders_.find(id);
  if (it == folders_.end()) {
    throw Error(ErrorKind::kNotFound, "unknown folder id " + std::to_string(id));
  }
  return it->second;
}

std::vector<TermId> TripleStore::folder_ids() const {
  std::vector<TermId> out;
  for (const auto& [id, _] : folders_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TermId> TripleStore::folder_closure(TermId root) const {
  std::vector<TermId> out;
  std::unordered_set<TermId> seen;
  std::vector<TermId> stack{root};
  while (!stack.empty()) {
    TermId f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    for (TermId c : folder(f).children) stack.push_back(c);
  }
  return out;
}

std::vector<TermId> TripleStore::members_of(TermId id, bool recursive) const {
  if (!recursive) return folder(id).members;
  std::vector<TermId> out;
  for (TermId f : folder_closure(id)) {
    const auto& m = folder(f).members;
    out.insert(out.end(), m.begin(), m.end());
  }
  sort_unique(out);
  return out;
}

void TripleStore::restore_folder(FolderRecord record) {
  check_name_free(record.name);
  sort_unique(record.members);
  sort_unique(record.children);
  index_folder_rows(record);
  folder_names_.emplace(record.name, record.id);
  folders_.emplace(record.id, std::move(record));
}

// ---------------------------------------------------------------------------
// Paths

TermId TripleStore::create_path_node(
    const std::string& name,
    const std::vector<std::pair<std::string, Value>>& attrs,
    std::vector<PathWord> paths) {
  check_name_free(name);
  for (const auto& [attr, value] : attrs) {
    if (!is_attribute_name(attr)) {
      throw Error(ErrorKind::kValidation,
                  "path attribute must start with '@': '" + attr + "'");
    }
  }
  for (const PathWord& w : paths) {
    if (w.edges.empty() || w.nodes.size() != w.edges.size() + 1) {
      throw Error(ErrorKind::kValidation,
                  "a path needs k >= 1 edges and k + 1 nodes");
    }
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
      GraphEdge e{w.nodes[i], w.edges[i].predicate, w.nodes[i + 1],
                  w.edges[i].edge_id};
      if (!graph_.contains(e)) {
        throw Error(ErrorKind::kValidation,
                    "path references a non-existent edge (" + text(e.subject) +
                        " " + text(e.predicate) + " " + text(e.object) + ")");
      }
    }
  }
  PathRecord record;
  record.id = fresh_node_id("path");
  record.name = name;
  record.paths = std::move(paths);
  for (const PathWord& w : record.paths) {
    record.elements.insert(record.elements.end(), w.nodes.begin(), w.nodes.end());
  }
  sort_unique(record.elements);

  insert_attribute(record.id, intern_node(kPathNameAttribute),
                   dict_.intern(Value::string(name)));
  for (const auto& [attr, value] : attrs) {
    insert_attribute(record.id, intern_node(attr), dict_.intern(value));
  }
  TermId id = record.id;
  path_names_.emplace(name, id);
  paths_.emplace(id, std::move(record));
  return id;
}

std::optional<TermId> TripleStore::find_path_node(std::string_view name) const {
  auto it = path_names_.find(std::string(name));
  if (it == path_names_.end()) return std::nullopt;
  return it->second;
}

const PathRecord& TripleStore::path_node(TermId id) const {
  auto it = paths_.find(id);
  if (it == paths_.end()) {
    throw Error(ErrorKind::kNotFound, "unknown path node id " + std::to_string(id));
  }
  return it->second;
}

std::vector<TermId> TripleStore::path_node_ids() const {
  std::vector<TermId> out;
  for (const auto& [id, _] : paths_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TermId> TripleStore::elements_of(TermId id) const {
  return path_node(id).elements;
}

void TripleStore::restore_path_node(PathRecord record) {
  check_name_free(record.name);
  record.elements.clear();
  for (const PathWord& w : record.paths) {
    record.elements.insert(record.elements.end(), w.nodes.begin(), w.nodes.end());
  }
  sort_unique(record.elements);
  path_names_.emplace(record.name, record.id);
  paths_.emplace(record.id, std::move(record));
}

}  // namespace fpsparql
