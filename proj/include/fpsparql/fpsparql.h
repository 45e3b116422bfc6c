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

#ifndef FPSPARQL_FPSPARQL_H
#define FPSPARQL_FPSPARQL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FPSPARQL_BUILDING)
#    define FPS_API __declspec(dllexport)
#  else
#    define FPS_API __declspec(dllimport)
#  endif
#else
#  define FPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fps_engine fps_engine;
typedef struct fps_result fps_result;

/* Status codes double as CLI exit codes. */
typedef enum fps_status {
  FPS_OK = 0,
  FPS_ERR_USAGE = 1,
  FPS_ERR_PARSE = 2,
  FPS_ERR_EVAL = 3,
  FPS_ERR_IO = 4
} fps_status;

typedef enum fps_reachability {
  FPS_REACH_TRAVERSAL = 0,
  FPS_REACH_CLOSURE = 1,
  FPS_REACH_GRIPP = 2
} fps_reachability;

typedef struct fps_query_options {
  size_t max_edges;              /* default 10 */
  fps_reachability reachability; /* default FPS_REACH_TRAVERSAL */
  size_t max_paths;              /* 0 = unlimited */
  int explain;                   /* nonzero: attach the plan to the result */
} fps_query_options;

typedef struct fps_load_report {
  size_t triples_read;
  size_t attribute_rows;
  size_t relationship_rows;
  size_t rejected_lines;
} fps_load_report;

FPS_API const char* fps_version(void);

FPS_API void fps_query_options_init(fps_query_options* options);

FPS_API fps_status fps_engine_new(fps_engine** out);
/* Opens the store in dir; an empty engine when dir holds no store. */
FPS_API fps_status fps_engine_open(const char* dir, fps_engine** out);
FPS_API void fps_engine_free(fps_engine* engine);
FPS_API fps_status fps_engine_persist(fps_engine* engine, const char* dir);

/* diagnostics (nullable) receives one "line N: reason" per rejected line;
   release with fps_string_free. */
FPS_API fps_status fps_engine_load_file(fps_engine* engine, const char* path,
                                        fps_load_report* report, char** diagnostics);
FPS_API fps_status fps_engine_load_text(fps_engine* engine, const char* text, size_t length,
                                        fps_load_report* report, char** diagnostics);

/* options may be NULL for defaults. */
FPS_API fps_status fps_engine_query(fps_engine* engine, const char* text,
                                    const fps_query_options* options, fps_result** out);
FPS_API fps_status fps_engine_explain(fps_engine* engine, const char* text,
                                      const fps_query_options* options, char** out);
FPS_API fps_status fps_engine_export(fps_engine* engine, const char* node_name, char** out);
FPS_API fps_status fps_engine_stats(fps_engine* engine, char** out);

FPS_API size_t fps_result_column_count(const fps_result* result);
FPS_API const char* fps_result_column_name(const fps_result* result, size_t column);
FPS_API size_t fps_result_row_count(const fps_result* result);
/* Rendered cell: node id, "quoted string" or "lexical"^^datatype. */
FPS_API const char* fps_result_cell(const fps_result* result, size_t row, size_t column);
FPS_API const char* fps_result_tsv(const fps_result* result);
FPS_API const char* fps_result_explain(const fps_result* result);
FPS_API size_t fps_result_warning_count(const fps_result* result);
FPS_API const char* fps_result_warning(const fps_result* result, size_t index);
FPS_API int fps_result_modified_store(const fps_result* result);
FPS_API int fps_result_truncated(const fps_result* result);
FPS_API void fps_result_free(fps_result* result);

/* kind: "biblio" or "events". */
FPS_API fps_status fps_generate_fixture(const char* kind, uint64_t seed, size_t event_count,
                                        char** out);

/* Message of the last failure on this thread; "" after success. */
FPS_API const char* fps_last_error(void);
FPS_API void fps_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
