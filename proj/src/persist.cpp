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

#include "fpsparql/persist.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "fpsparql/error.hpp"
#include "fpsparql/loader.hpp"

namespace fpsparql {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "fpsparql-store";
constexpr const char* kManifest = "manifest.tsv";
constexpr const char* kEntityFile = "entity.tsv";
constexpr const char* kGraphFile = "graph.tsv";
constexpr const char* kFolderFile = "folder.tsv";
constexpr const char* kPathFile = "path.tsv";

void write_table(const fs::path& file, const std::string& header,
                 std::vector<std::string> rows) {
  std::sort(rows.begin(), rows.end());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + file.string());
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + file.string());
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

// Reads a table, checking its header, and hands each row's fields to `fn`.
template <typename Fn>
void read_table(const fs::path& file, const std::string& header, std::size_t width,
                Fn&& fn) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorKind::kFormat, file.filename().string() + ": bad header");
  }
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != width) {
      throw Error(ErrorKind::kFormat, file.filename().string() + ":" +
                                          std::to_string(number) +
                                          ": expected " + std::to_string(width) +
                                          " columns");
    }
    fn(fields, number);
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "read failure in " + file.string());
}

std::uint32_t parse_index(const std::string& s, const fs::path& file) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used == s.size()) return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kFormat, file.filename().string() + ": bad index '" + s + "'");
}

}  // namespace

bool is_store_directory(const fs::path& directory) {
  std::error_code ec;
  return fs::is_regular_file(directory / kManifest, ec);
}

void persist_store(const TripleStore& store, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + directory.string());
  auto t = [&](TermId id) -> const std::string& { return store.text(id); };

  std::vector<std::string> rows;
  for (const auto& r : store.entities().rows()) {
    rows.push_back(t(r.subject) + '\t' + t(r.attribute) + '\t' +
                   store.dictionary().value(r.value).render());
  }
  write_table(directory / kEntityFile, "subject\tattribute\tvalue", std::move(rows));

  rows.clear();
  for (const auto& e : store.graph().rows()) {
    rows.push_back(t(e.subject) + '\t' + t(e.predicate) + '\t' + t(e.object) +
                   '\t' + (e.edge_id == kNoTerm ? std::string() : t(e.edge_id)));
  }
  write_table(directory / kGraphFile, "subject\tpredicate\tobject\tedge_id",
              std::move(rows));

  rows.clear();
  std::vector<std::string> registry;
  for (TermId f : store.folder_ids()) {
    const FolderRecord& rec = store.folder(f);
    registry.push_back("folder\t" + t(f) + '\t' + rec.name);
    for (const auto& e : rec.member_rows) {
      rows.push_back(t(f) + '\t' + t(e.subject) + '\t' + t(e.predicate) + '\t' +
                     t(e.object));
    }
    for (TermId c : rec.children) {
      rows.push_back(t(f) + '\t' + t(c) + '\t' + std::string(kChildFolderMarker) +
                     '\t' + t(f));
    }
  }
  write_table(directory / kFolderFile, "folder_id\tsubject\tpredicate\tobject",
              std::move(rows));

  rows.clear();
  for (TermId p : store.path_node_ids()) {
    const PathRecord& rec = store.path_node(p);
    registry.push_back("path\t" + t(p) + '\t' + rec.name);
    for (const auto& r : element_rows(rec)) {
      rows.push_back(t(p) + '\t' + std::to_string(r.path_index) + '\t' +
                     std::to_string(r.seq) + '\t' + t(r.subject) + '\t' +
                     t(r.predicate) + '\t' + t(r.object) + '\t' +
                     (r.edge_id == kNoTerm ? std::string() : t(r.edge_id)));
    }
  }
  write_table(directory / kPathFile,
              "path_node_id\tpath_index\tseq\tsubject\tpredicate\tobject\tedge_id",
              std::move(rows));

  // The manifest goes last so a torn write is detected on open.
  std::sort(registry.begin(), registry.end());
  std::ofstream out(directory / kManifest, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write manifest");
  out << kMagic << '\t' << kStoreFormatVersion << '\n' << "kind\tnode_id\tname\n";
  for (const auto& r : registry) out << r << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "manifest write failed");
}

TripleStore open_store(const fs::path& directory) {
  if (!is_store_directory(directory)) {
    throw Error(ErrorKind::kIo, "no store found in '" + directory.string() + "'");
  }
  std::ifstream manifest(directory / kManifest, std::ios::binary);
  std::string line;
  if (!std::getline(manifest, line)) {
    throw Error(ErrorKind::kFormat, "empty manifest");
  }
  auto magic = split_tabs(line);
  if (magic.size() != 2 || magic[0] != kMagic) {
    throw Error(ErrorKind::kFormat, "not an fpsparql store manifest");
  }
  if (magic[1] != std::to_string(kStoreFormatVersion)) {
    throw Error(ErrorKind::kFormat, "store format version " + magic[1] +
                                        " is not supported (expected " +
                                        std::to_string(kStoreFormatVersion) + ")");
  }
  if (!std::getline(manifest, line) || line != "kind\tnode_id\tname") {
    throw Error(ErrorKind::kFormat, "manifest: bad header");
  }

  TripleStore store;
  Dictionary& dict = store.dictionary();
  auto node = [&](const std::string& s) { return store.intern_node(s); };

  read_table(directory / kEntityFile, "subject\tattribute\tvalue", 3,
             [&](const std::vector<std::string>& f, std::size_t n) {
               auto value = parse_object_token(f[2]);
               if (!value || f[0].empty()) {
                 throw Error(ErrorKind::kFormat,
                             "entity.tsv:" + std::to_string(n) + ": bad row");
               }
               store.insert_attribute(node(f[0]), node(f[1]), dict.intern(*value));
             });
  read_table(directory / kGraphFile, "subject\tpredicate\tobject\tedge_id", 4,
             [&](const std::vector<std::string>& f, std::size_t) {
               store.insert_relationship(GraphEdge{
                   node(f[0]), node(f[1]), node(f[2]),
                   f[3].empty() ? kNoTerm : node(f[3])});
             });

  std::map<TermId, FolderRecord> folders;
  std::map<TermId, PathRecord> paths;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw Error(ErrorKind::kFormat, "manifest: bad row");
    TermId id = node(f[1]);
    if (f[0] == "folder") {
      folders[id].id = id;
      folders[id].name = f[2];
    } else if (f[0] == "path") {
      paths[id].id = id;
      paths[id].name = f[2];
    } else {
      throw Error(ErrorKind::kFormat, "manifest: unknown kind '" + f[0] + "'");
    }
  }

  TermId member_marker = node(std::string(kMemberOfMarker));
  TermId child_marker = node(std::string(kChildFolderMarker));
  read_table(directory / kFolderFile, "folder_id\tsubject\tpredicate\tobject", 4,
             [&](const std::vector<std::string>& f, std::size_t n) {
               auto it = folders.find(node(f[0]));
               if (it == folders.end()) {
                 throw Error(ErrorKind::kFormat, "folder.tsv:" + std::to_string(n) +
                                                     ": unregistered folder");
               }
               FolderRecord& rec = it->second;
               GraphEdge e{node(f[1]), node(f[2]), node(f[3]), kNoTerm};
               if (e.predicate == child_marker) {
                 rec.children.push_back(e.subject);
                 return;
               }
               if (e.predicate == member_marker) rec.members.push_back(e.subject);
               rec.member_rows.push_back(e);
             });

  // path id -> path index -> seq -> row
  std::map<TermId, std::map<std::uint32_t, std::map<std::uint32_t, PathElementRow>>>
      elements;
  const fs::path path_file = directory / kPathFile;
  read_table(path_file,
             "path_node_id\tpath_index\tseq\tsubject\tpredicate\tobject\tedge_id", 7,
             [&](const std::vector<std::string>& f, std::size_t n) {
               TermId id = node(f[0]);
               if (!paths.contains(id)) {
                 throw Error(ErrorKind::kFormat, "path.tsv:" + std::to_string(n) +
                                                     ": unregistered path node");
               }
               PathElementRow row{id,
                                  parse_index(f[1], path_file),
                                  parse_index(f[2], path_file),
                                  node(f[3]),
                                  node(f[4]),
                                  node(f[5]),
                                  f[6].empty() ? kNoTerm : node(f[6])};
               elements[id][row.path_index][row.seq] = row;
             });
  for (auto& [id, by_index] : elements) {
    PathRecord& rec = paths[id];
    std::uint32_t expected_index = 0;
    for (auto& [index, by_seq] : by_index) {
      if (index != expected_index++) {
        throw Error(ErrorKind::kFormat, "path.tsv: gap in path_index");
      }
      PathWord word;
      std::uint32_t expected_seq = 0;
      for (auto& [seq, row] : by_seq) {
        if (seq != expected_seq++ ||
            (!word.nodes.empty() && word.nodes.back() != row.subject)) {
          throw Error(ErrorKind::kFormat, "path.tsv: broken element sequence");
        }
        if (word.nodes.empty()) word.nodes.push_back(row.subject);
        word.edges.push_back({row.predicate, row.edge_id});
        word.nodes.push_back(row.object);
      }
      rec.paths.push_back(std::move(word));
    }
  }

  for (auto& [id, rec] : folders) store.restore_folder(std::move(rec));
  for (auto& [id, rec] : paths) store.restore_path_node(std::move(rec));
  return store;
}

}  // namespace fpsparql
