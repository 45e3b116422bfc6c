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

#include <filesystem>

#include "fpsparql/store.hpp"

namespace fpsparql {

inline constexpr int kStoreFormatVersion = 1;

// Writes manifest.tsv, entity.tsv, graph.tsv, folder.tsv and path.tsv into
// `directory` (created when missing). Rows are sorted for reproducible diffs.
void persist_store(const TripleStore& store,
                   const std::filesystem::path& directory);

// Throws Error(kIo) when the directory holds no store and Error(kFormat) on
// a version mismatch or a malformed row.
TripleStore open_store(const std::filesystem::path& directory);

// True when `directory` contains a store manifest.
bool is_store_directory(const std::filesystem::path& directory);

}  // namespace fpsparql
