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

// Command-line front end over the C API.

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fpsparql/fpsparql.h"

namespace {

struct EngineDeleter {
  void operator()(fps_engine* e) const { fps_engine_free(e); }
};
struct ResultDeleter {
  void operator()(fps_result* r) const { fps_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { fps_string_free(s); }
};
using EnginePtr = std::unique_ptr<fps_engine, EngineDeleter>;
using ResultPtr = std::unique_ptr<fps_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Settings {
  std::string store;
  bool explain = false;
  std::size_t max_edges = 10;
  std::string reachability = "traversal";
  std::size_t max_paths = 0;
  std::string format = "tsv";
};

int fail(fps_status status) {
  std::cerr << "error: " << fps_last_error() << '\n';
  return static_cast<int>(status);
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return FPS_ERR_USAGE;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

fps_query_options query_options(const Settings& s) {
  fps_query_options o;
  fps_query_options_init(&o);
  o.max_edges = s.max_edges;
  o.reachability = s.reachability == "closure" ? FPS_REACH_CLOSURE
                   : s.reachability == "gripp" ? FPS_REACH_GRIPP
                                               : FPS_REACH_TRAVERSAL;
  o.max_paths = s.max_paths;
  o.explain = s.explain ? 1 : 0;
  return o;
}

int open_engine(const Settings& s, EnginePtr& out) {
  fps_engine* raw = nullptr;
  fps_status st = fps_engine_open(s.store.c_str(), &raw);
  if (st != FPS_OK) return fail(st);
  out.reset(raw);
  return 0;
}

// Runs one statement, writes its plan (when asked) and rendered rows.
int run_statement(fps_engine* engine, const Settings& s, const std::string& text,
                  std::ostream& out) {
  fps_query_options opts = query_options(s);
  fps_result* raw = nullptr;
  fps_status st = fps_engine_query(engine, text.c_str(), &opts, &raw);
  if (st != FPS_OK) return fail(st);
  ResultPtr result(raw);
  if (s.explain) out << fps_result_explain(result.get());
  out << fps_result_tsv(result.get());
  out.flush();
  for (std::size_t i = 0; i < fps_result_warning_count(result.get()); ++i)
    std::cerr << "warning: " << fps_result_warning(result.get(), i) << '\n';
  if (fps_result_modified_store(result.get())) {
    st = fps_engine_persist(engine, s.store.c_str());
    if (st != FPS_OK) return fail(st);
  }
  return 0;
}

bool is_terminator(const std::string& line) {
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return false;
  auto last = line.find_last_not_of(" \t\r");
  return first == last && line[first] == ';';
}

int run_repl(fps_engine* engine, const Settings& s) {
  const bool interactive = isatty(STDIN_FILENO) != 0;
  std::string buffer;
  std::string line;
  int status = 0;
  auto flush = [&] {
    if (buffer.find_first_not_of(" \t\r\n") != std::string::npos) {
      int rc = run_statement(engine, s, buffer, std::cout);
      if (rc != 0) status = rc;
    }
    buffer.clear();
  };
  if (interactive) std::cerr << "fpsparql> ";
  while (std::getline(std::cin, line)) {
    if (is_terminator(line)) {
      flush();
      if (interactive) std::cerr << "fpsparql> ";
      continue;
    }
    buffer += line;
    buffer += '\n';
    if (interactive) std::cerr << "      ... ";
  }
  flush();
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FPSPARQL graph query engine"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--store", s.store, "Store directory");
  app.add_flag("--explain", s.explain, "Print the query plan before the results");
  app.add_option("--max-edges", s.max_edges, "Longest path searched by pconstruct")
      ->check(CLI::PositiveNumber);
  app.add_option("--reachability", s.reachability, "Reachability strategy")
      ->check(CLI::IsMember({"traversal", "closure", "gripp"}));
  app.add_option("--max-paths", s.max_paths, "Stop path search after N paths")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"tsv"}));

  auto* load = app.add_subcommand("load", "Load triple files into the store");
  std::vector<std::string> load_files;
  load->add_option("files", load_files, "Triple files")->required();

  auto* query = app.add_subcommand("query", "Run one statement");
  std::string query_text;
  std::string query_file;
  query->add_option("text", query_text, "Statement text");
  query->add_option("--file", query_file, "Read the statement from a file");

  auto* repl = app.add_subcommand("repl", "Read statements from stdin, each ended by a lone ';' line");

  auto* exp = app.add_subcommand("export", "Write a folder's members or a path node's paths");
  std::string export_name;
  std::string export_file;
  exp->add_option("node", export_name, "Folder or path node name")->required();
  exp->add_option("file", export_file, "Output file (default stdout)");

  auto* explain = app.add_subcommand("explain", "Print the plan of a statement");
  std::string explain_text;
  std::string explain_file;
  explain->add_option("text", explain_text, "Statement text");
  explain->add_option("--file", explain_file, "Read the statement from a file");

  auto* gen = app.add_subcommand("gen-fixture", "Write a generated triple file");
  std::string gen_kind;
  std::uint64_t gen_seed = 42;
  std::size_t gen_events = 5000;
  std::string gen_out;
  gen->add_option("kind", gen_kind, "biblio or events")
      ->required()
      ->check(CLI::IsMember({"biblio", "events"}));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--events", gen_events, "Number of events")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Print store statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return FPS_ERR_USAGE;
  }

  if (gen->parsed()) {
    char* raw = nullptr;
    fps_status st = fps_generate_fixture(gen_kind.c_str(), gen_seed, gen_events, &raw);
    if (st != FPS_OK) return fail(st);
    StringPtr text(raw);
    if (gen_out.empty()) {
      std::cout << text.get();
      return 0;
    }
    std::ofstream out(gen_out, std::ios::binary | std::ios::trunc);
    out << text.get();
    if (!out) {
      std::cerr << "error: cannot write " << gen_out << '\n';
      return FPS_ERR_IO;
    }
    return 0;
  }

  if (s.store.empty()) return usage_error("--store DIR is required");
  EnginePtr engine;
  if (int rc = open_engine(s, engine); rc != 0) return rc;

  if (load->parsed()) {
    for (const auto& file : load_files) {
      fps_load_report report{};
      char* diagnostics = nullptr;
      fps_status st = fps_engine_load_file(engine.get(), file.c_str(), &report, &diagnostics);
      StringPtr diag(diagnostics);
      if (st != FPS_OK) return fail(st);
      if (diag && *diag) std::cerr << file << ": " << diag.get();
      std::cout << "loaded " << report.triples_read << " triples from " << file << " ("
                << report.attribute_rows << " attribute rows, " << report.relationship_rows
                << " relationship rows, " << report.rejected_lines << " rejected lines)\n";
    }
    fps_status st = fps_engine_persist(engine.get(), s.store.c_str());
    return st == FPS_OK ? 0 : fail(st);
  }

  if (query->parsed() || explain->parsed()) {
    bool is_query = query->parsed();
    std::string text = is_query ? query_text : explain_text;
    const std::string& file = is_query ? query_file : explain_file;
    if (!file.empty()) {
      if (!text.empty()) return usage_error("give the statement as text or --file, not both");
      if (!read_file(file, text)) {
        std::cerr << "error: cannot read " << file << '\n';
        return FPS_ERR_IO;
      }
    }
    if (text.empty()) return usage_error("no statement given");
    if (is_query) return run_statement(engine.get(), s, text, std::cout);
    fps_query_options opts = query_options(s);
    char* raw = nullptr;
    fps_status st = fps_engine_explain(engine.get(), text.c_str(), &opts, &raw);
    if (st != FPS_OK) return fail(st);
    StringPtr plan(raw);
    std::cout << plan.get();
    return 0;
  }

  if (repl->parsed()) return run_repl(engine.get(), s);

  if (exp->parsed()) {
    char* raw = nullptr;
    fps_status st = fps_engine_export(engine.get(), export_name.c_str(), &raw);
    if (st != FPS_OK) return fail(st);
    StringPtr text(raw);
    if (export_file.empty()) {
      std::cout << text.get();
      return 0;
    }
    std::ofstream out(export_file, std::ios::binary | std::ios::trunc);
    out << text.get();
    if (!out) {
      std::cerr << "error: cannot write " << export_file << '\n';
      return FPS_ERR_IO;
    }
    return 0;
  }

  if (stats->parsed()) {
    char* raw = nullptr;
    fps_status st = fps_engine_stats(engine.get(), &raw);
    if (st != FPS_OK) return fail(st);
    StringPtr text(raw);
    std::cout << text.get();
    return 0;
  }
  return usage_error("no command given");
}
