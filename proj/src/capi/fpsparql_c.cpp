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

#include "fpsparql/fpsparql.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "fpsparql/engine.hpp"
#include "fpsparql/error.hpp"
#include "fpsparql/fixtures.hpp"

struct fps_engine {
  fpsparql::Engine engine;
  fps_engine() = default;
  explicit fps_engine(const char* dir) : engine(dir) {}
};

struct fps_result {
  fpsparql::QueryOutcome outcome;
};

namespace {

thread_local std::string last_error;

fps_status status_of(fpsparql::ErrorKind kind) {
  using fpsparql::ErrorKind;
  switch (kind) {
    case ErrorKind::kUsage: return FPS_ERR_USAGE;
    case ErrorKind::kParse: return FPS_ERR_PARSE;
    case ErrorKind::kIo:
    case ErrorKind::kFormat: return FPS_ERR_IO;
    default: return FPS_ERR_EVAL;
  }
}

template <typename Body>
fps_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return FPS_OK;
  } catch (const fpsparql::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FPS_ERR_EVAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FPS_ERR_EVAL;
  }
}

fps_status usage(const char* message) {
  last_error = message;
  return FPS_ERR_USAGE;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_report(const fpsparql::LoadReport& r, fps_load_report* report, char** diagnostics) {
  if (report != nullptr) {
    report->triples_read = r.triples_read;
    report->attribute_rows = r.attribute_rows;
    report->relationship_rows = r.relationship_rows;
    report->rejected_lines = r.rejected_lines.size();
  }
  if (diagnostics != nullptr) {
    std::ostringstream os;
    for (const auto& [line, reason] : r.rejected_lines) os << "line " << line << ": " << reason << '\n';
    *diagnostics = duplicate(os.str());
  }
}

fpsparql::QueryOptions to_options(const fps_query_options* in) {
  fpsparql::QueryOptions out;
  if (in == nullptr) return out;
  if (in->max_edges == 0) throw fpsparql::Error(fpsparql::ErrorKind::kUsage, "max_edges must be at least 1");
  out.max_edges = in->max_edges;
  switch (in->reachability) {
    case FPS_REACH_TRAVERSAL: out.reachability = fpsparql::ReachabilityStrategy::kTraversal; break;
    case FPS_REACH_CLOSURE: out.reachability = fpsparql::ReachabilityStrategy::kClosure; break;
    case FPS_REACH_GRIPP: out.reachability = fpsparql::ReachabilityStrategy::kGripp; break;
    default: throw fpsparql::Error(fpsparql::ErrorKind::kUsage, "unknown reachability strategy");
  }
  if (in->max_paths > 0) out.max_paths = in->max_paths;
  out.explain = in->explain != 0;
  return out;
}

}  // namespace

extern "C" {

FPS_API const char* fps_version(void) { return FPSPARQL_VERSION; }

FPS_API void fps_query_options_init(fps_query_options* options) {
  if (options == nullptr) return;
  options->max_edges = 10;
  options->reachability = FPS_REACH_TRAVERSAL;
  options->max_paths = 0;
  options->explain = 0;
}

FPS_API fps_status fps_engine_new(fps_engine** out) {
  if (out == nullptr) return usage("out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new fps_engine(); });
}

FPS_API fps_status fps_engine_open(const char* dir, fps_engine** out) {
  if (dir == nullptr || out == nullptr) return usage("dir and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = new fps_engine(dir); });
}

FPS_API void fps_engine_free(fps_engine* engine) { delete engine; }

FPS_API fps_status fps_engine_persist(fps_engine* engine, const char* dir) {
  if (engine == nullptr || dir == nullptr) return usage("engine and dir must not be null");
  return guarded([&] { engine->engine.persist(dir); });
}

FPS_API fps_status fps_engine_load_file(fps_engine* engine, const char* path,
                                        fps_load_report* report, char** diagnostics) {
  if (engine == nullptr || path == nullptr) return usage("engine and path must not be null");
  if (diagnostics != nullptr) *diagnostics = nullptr;
  return guarded([&] { fill_report(engine->engine.load_file(path), report, diagnostics); });
}

FPS_API fps_status fps_engine_load_text(fps_engine* engine, const char* text, size_t length,
                                        fps_load_report* report, char** diagnostics) {
  if (engine == nullptr || (text == nullptr && length > 0))
    return usage("engine and text must not be null");
  if (diagnostics != nullptr) *diagnostics = nullptr;
  return guarded([&] {
    std::istringstream in(std::string(text == nullptr ? "" : text, length));
    fill_report(engine->engine.load(in), report, diagnostics);
  });
}

FPS_API fps_status fps_engine_query(fps_engine* engine, const char* text,
                                    const fps_query_options* options, fps_result** out) {
  if (engine == nullptr || text == nullptr || out == nullptr)
    return usage("engine, text and out must not be null");
  *out = nullptr;
  return guarded([&] {
    auto result = std::make_unique<fps_result>();
    result->outcome = engine->engine.execute(text, to_options(options));
    *out = result.release();
  });
}

FPS_API fps_status fps_engine_explain(fps_engine* engine, const char* text,
                                      const fps_query_options* options, char** out) {
  if (engine == nullptr || text == nullptr || out == nullptr)
    return usage("engine, text and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = duplicate(engine->engine.explain(text, to_options(options))); });
}

FPS_API fps_status fps_engine_export(fps_engine* engine, const char* node_name, char** out) {
  if (engine == nullptr || node_name == nullptr || out == nullptr)
    return usage("engine, node_name and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = duplicate(engine->engine.export_node(node_name)); });
}

FPS_API fps_status fps_engine_stats(fps_engine* engine, char** out) {
  if (engine == nullptr || out == nullptr) return usage("engine and out must not be null");
  *out = nullptr;
  return guarded([&] { *out = duplicate(engine->engine.stats()); });
}

FPS_API size_t fps_result_column_count(const fps_result* result) {
  return result ? result->outcome.columns.size() : 0;
}

FPS_API const char* fps_result_column_name(const fps_result* result, size_t column) {
  if (result == nullptr || column >= result->outcome.columns.size()) return nullptr;
  return result->outcome.columns[column].c_str();
}

FPS_API size_t fps_result_row_count(const fps_result* result) {
  return result ? result->outcome.rows.size() : 0;
}

FPS_API const char* fps_result_cell(const fps_result* result, size_t row, size_t column) {
  if (result == nullptr || row >= result->outcome.rows.size()) return nullptr;
  const auto& r = result->outcome.rows[row];
  return column < r.size() ? r[column].c_str() : nullptr;
}

FPS_API const char* fps_result_tsv(const fps_result* result) {
  return result ? result->outcome.tsv.c_str() : nullptr;
}

FPS_API const char* fps_result_explain(const fps_result* result) {
  return result ? result->outcome.explain.c_str() : nullptr;
}

FPS_API size_t fps_result_warning_count(const fps_result* result) {
  return result ? result->outcome.warnings.size() : 0;
}

FPS_API const char* fps_result_warning(const fps_result* result, size_t index) {
  if (result == nullptr || index >= result->outcome.warnings.size()) return nullptr;
  return result->outcome.warnings[index].c_str();
}

FPS_API int fps_result_modified_store(const fps_result* result) {
  return result && result->outcome.modified_store ? 1 : 0;
}

FPS_API int fps_result_truncated(const fps_result* result) {
  return result && result->outcome.truncated ? 1 : 0;
}

FPS_API void fps_result_free(fps_result* result) { delete result; }

FPS_API fps_status fps_generate_fixture(const char* kind, uint64_t seed, size_t event_count,
                                        char** out) {
  if (kind == nullptr || out == nullptr) return usage("kind and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = duplicate(fpsparql::generate_fixture(fpsparql::parse_fixture_kind(kind), seed, event_count));
  });
}

FPS_API const char* fps_last_error(void) { return last_error.c_str(); }

FPS_API void fps_string_free(char* text) { std::free(text); }

}  // extern "C"
