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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fpsparql/value.hpp"

namespace fpsparql {

// Attribute predicates carry this prefix; everything else is a relationship.
inline constexpr char kAttributePrefix = '@';
inline constexpr std::string_view kNameAttribute = "@Name";       // folders
inline constexpr std::string_view kPathNameAttribute = "@name";   // paths
inline constexpr std::string_view kLabelAttribute = "@label";
inline constexpr std::string_view kMemberOfMarker = "@memberOf";
inline constexpr std::string_view kChildFolderMarker = "@partOf";
inline constexpr std::string_view kPartOfPredicate = "partOf";

inline bool is_attribute_name(std::string_view p) {
  return p.size() > 1 && p.front() == kAttributePrefix;
}

// Decoded rows, the public currency of the store API.
struct AttributeRow {
  std::string subject;
  std::string attribute;
  Value value;
  friend bool operator==(const AttributeRow&, const AttributeRow&) = default;
};

struct RelationshipRow {
  std::string subject;
  std::string predicate;
  std::string object;
  std::optional<std::string> edge_id;
  friend bool operator==(const RelationshipRow&,
                         const RelationshipRow&) = default;
  friend auto operator<=>(const RelationshipRow&,
                          const RelationshipRow&) = default;
};

// Dictionary-encoded rows.
struct EntityTriple {
  TermId subject;
  TermId attribute;
  TermId value;
  friend bool operator==(const EntityTriple&, const EntityTriple&) = default;
};

struct GraphEdge {
  TermId subject;
  TermId predicate;
  TermId object;
  TermId edge_id = kNoTerm;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

using RowIndex = std::uint32_t;

class EntityStore {
 public:
  // Returns false when the row is already present.
  bool insert(const EntityTriple& row);

  std::size_t size() const noexcept { return rows_.size(); }
  std::span<const EntityTriple> rows() const noexcept { return rows_; }
  const EntityTriple& row(RowIndex i) const { return rows_[i]; }

  std::span<const RowIndex> rows_with_subject(TermId subject) const;
  std::span<const RowIndex> rows_with_attribute(TermId attribute) const;
  // Type index: subjects carrying (attribute, value).
  std::span<const TermId> subjects_with(TermId attribute, TermId value) const;
  bool contains(const EntityTriple& row) const;

 private:
  struct Hash {
    std::size_t operator()(const EntityTriple& t) const noexcept;
  };
  std::vector<EntityTriple> rows_;
  std::unordered_set<EntityTriple, Hash> present_;
  std::unordered_map<TermId, std::vector<RowIndex>> by_subject_;
  std::unordered_map<TermId, std::vector<RowIndex>> by_attribute_;
  std::unordered_map<std::uint64_t, std::vector<TermId>> by_attribute_value_;
};

class GraphStore {
 public:
  bool insert(const GraphEdge& row);

  std::size_t size() const noexcept { return rows_.size(); }
  std::span<const GraphEdge> rows() const noexcept { return rows_; }
  const GraphEdge& row(RowIndex i) const { return rows_[i]; }

  std::span<const RowIndex> rows_with_subject(TermId subject) const;
  std::span<const RowIndex> rows_with_predicate(TermId predicate) const;
  std::span<const RowIndex> rows_with_object(TermId object) const;
  // True when some row (subject, predicate, object) carries this edge id
  // (kNoTerm meaning "no reified edge").
  bool contains(const GraphEdge& row) const;

 private:
  struct Hash {
    std::size_t operator()(const GraphEdge& e) const noexcept;
  };
  std::vector<GraphEdge> rows_;
  std::unordered_set<GraphEdge, Hash> present_;
  std::unordered_map<TermId, std::vector<RowIndex>> by_subject_;
  std::unordered_map<TermId, std::vector<RowIndex>> by_predicate_;
  std::unordered_map<TermId, std::vector<RowIndex>> by_object_;
};

// Materialized folder node. member_rows holds the graph rows of every member
// plus one (member, @memberOf, folder) marker per member.
struct FolderRecord {
  TermId id = kNoTerm;
  std::string name;
  std::vector<TermId> members;   // sorted by id
  std::vector<TermId> children;  // child folder ids, sorted
  std::vector<GraphEdge> member_rows;
  std::unordered_map<TermId, std::vector<RowIndex>> rows_by_predicate;
};

struct PathEdge {
  TermId predicate = kNoTerm;
  TermId edge_id = kNoTerm;
  friend bool operator==(const PathEdge&, const PathEdge&) = default;
  friend auto operator<=>(const PathEdge&, const PathEdge&) = default;
};

// nodes.size() == edges.size() + 1; edge i joins nodes[i] to nodes[i + 1].
struct PathWord {
  std::vector<TermId> nodes;
  std::vector<PathEdge> edges;
  friend bool operator==(const PathWord&, const PathWord&) = default;
};

struct PathRecord {
  TermId id = kNoTerm;
  std::string name;
  std::vector<PathWord> paths;
  std::vector<TermId> elements;  // sorted, unique
};

// One (path_index, seq) element row of the path store.
struct PathElementRow {
  TermId path_node;
  std::uint32_t path_index;
  std::uint32_t seq;
  TermId subject;
  TermId predicate;
  TermId object;
  TermId edge_id;
};

std::vector<PathElementRow> element_rows(const PathRecord& record);

struct LoadReport {
  std::size_t triples_read = 0;
  std::size_t attribute_rows = 0;
  std::size_t relationship_rows = 0;
  std::vector<std::pair<std::size_t, std::string>> rejected_lines;
};

// The four stores plus the term dictionary. Not internally synchronized:
// const member functions may run concurrently, mutation needs exclusivity.
class TripleStore {
 public:
  TripleStore();

  Dictionary& dictionary() noexcept { return dict_; }
  const Dictionary& dictionary() const noexcept { return dict_; }
  const EntityStore& entities() const noexcept { return entities_; }
  const GraphStore& graph() const noexcept { return graph_; }

  void insert_attribute(const AttributeRow& row);
  void insert_relationship(const RelationshipRow& row);
  // Encoded fast paths used by the loader and persistence; they validate the
  // @-prefix rule but not node-id syntax.
  bool insert_attribute(TermId subject, TermId attribute, TermId value);
  bool insert_relationship(const GraphEdge& edge);

  std::vector<std::string> scan_by_attribute(std::string_view attribute,
                                             const Value& value) const;
  std::vector<RelationshipRow> out_edges(std::string_view subject) const;

  // Node set: every subject plus every relationship object.
  bool is_node(TermId id) const noexcept {
    return id < is_node_.size() && is_node_[id];
  }
  std::vector<TermId> nodes() const;
  std::size_t node_count() const noexcept { return node_count_; }

  TermId create_folder(const std::string& name,
                       const std::vector<std::pair<std::string, Value>>& attrs,
                       const std::vector<std::string>& members);
  TermId create_folder(const std::string& name,
                       const std::vector<std::pair<std::string, Value>>& attrs,
                       std::vector<TermId> members);
  TermId create_folder_of_folders(
      const std::string& name,
      const std::vector<std::pair<std::string, Value>>& attrs,
      const std::vector<std::string>& children);

  std::optional<TermId> find_folder(std::string_view name) const;
  const FolderRecord& folder(TermId id) const;
  std::vector<TermId> folder_ids() const;
  std::vector<TermId> members_of(TermId folder, bool recursive) const;
  // The folder and all of its descendants, each once.
  std::vector<TermId> folder_closure(TermId folder) const;

  TermId create_path_node(const std::string& name,
                          const std::vector<std::pair<std::string, Value>>& attrs,
                          std::vector<PathWord> paths);
  std::optional<TermId> find_path_node(std::string_view name) const;
  const PathRecord& path_node(TermId id) const;
  std::vector<TermId> path_node_ids() const;
  std::vector<TermId> elements_of(TermId path_node) const;

  // Record restoration used by persistence; no side rows are written.
  void restore_folder(FolderRecord record);
  void restore_path_node(PathRecord record);

  const std::string& text(TermId id) const { return dict_.value(id).text(); }
  TermId intern_node(std::string_view id) {
    return dict_.intern(Value::node(std::string(id)));
  }

 private:
  void mark_node(TermId id);
  TermId fresh_node_id(std::string_view prefix);
  void index_folder_rows(FolderRecord& record);
  void check_name_free(const std::string& name) const;

  Dictionary dict_;
  EntityStore entities_;
  GraphStore graph_;
  std::unordered_map<TermId, FolderRecord> folders_;
  std::unordered_map<std::string, TermId> folder_names_;
  std::unordered_map<TermId, PathRecord> paths_;
  std::unordered_map<std::string, TermId> path_names_;
  std::vector<bool> is_node_;
  std::size_t node_count_ = 0;
  std::uint64_t next_generated_ = 1;
};

}  // namespace fpsparql
