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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "fpsparql/fpsparql.h"

// Only the exported C surface is visible here.

namespace {

struct Engine {
	fps_engine* raw = nullptr;
	Engine() { EXPECT_EQ(fps_engine_new(&raw), FPS_OK); }
	~Engine() { fps_engine_free(raw); }
};

std::string take(char* text) {
	std::string out = text ? text : "";
	fps_string_free(text);
	return out;
}

void load_biblio(fps_engine* e) {
	char* text = nullptr;
	ASSERT_EQ(fps_generate_fixture("biblio", 0, 0, &text), FPS_OK);
	fps_load_report report{};
	ASSERT_EQ(fps_engine_load_text(e, text, std::strlen(text), &report, nullptr), FPS_OK);
	EXPECT_EQ(report.relationship_rows, 11u);
	EXPECT_EQ(report.rejected_lines, 0u);
	fps_string_free(text);
}

}  // namespace

TEST(capi, version_and_defaults)
{
	EXPECT_GT(std::strlen(fps_version()), 0u);
	fps_query_options o;
	fps_query_options_init(&o);
	EXPECT_EQ(o.max_edges, 10u);
	EXPECT_EQ(o.reachability, FPS_REACH_TRAVERSAL);
	EXPECT_EQ(o.max_paths, 0u);
	EXPECT_EQ(o.explain, 0);
}

TEST(capi, query_result_accessors)
{
	Engine e;
	load_biblio(e.raw);
	fps_result* r = nullptr;
	ASSERT_EQ(fps_engine_query(e.raw, "select ?p ?y where { ?p @year ?y. ?p publishedIn CAiSE. }", nullptr, &r),
	          FPS_OK);
	ASSERT_EQ(fps_result_column_count(r), 2u);
	EXPECT_STREQ(fps_result_column_name(r, 0), "p");
	EXPECT_STREQ(fps_result_column_name(r, 1), "y");
	ASSERT_EQ(fps_result_row_count(r), 2u);
	EXPECT_STREQ(fps_result_cell(r, 0, 0), "paper1");
	EXPECT_STREQ(fps_result_cell(r, 1, 1), "\"2010\"");
	EXPECT_STREQ(fps_result_tsv(r), "p\ty\npaper1\t\"2010\"\npaper3\t\"2010\"\n");
	EXPECT_EQ(fps_result_modified_store(r), 0);
	EXPECT_EQ(fps_result_truncated(r), 0);
	EXPECT_EQ(fps_result_warning_count(r), 0u);
	fps_result_free(r);
	EXPECT_STREQ(fps_last_error(), "");
}

TEST(capi, status_codes)
{
	Engine e;
	load_biblio(e.raw);
	fps_result* r = nullptr;
	EXPECT_EQ(fps_engine_query(e.raw, "select ?p where {", nullptr, &r), FPS_ERR_PARSE);
	EXPECT_NE(std::string(fps_last_error()).find("line 1"), std::string::npos);
	EXPECT_EQ(fps_engine_query(e.raw, "(Nope) apply ( select ?p where { ?p @type paper. } )", nullptr, &r),
	          FPS_ERR_EVAL);
	EXPECT_EQ(fps_engine_query(nullptr, "select ?p where { ?p @type paper. }", nullptr, &r), FPS_ERR_USAGE);
	EXPECT_EQ(fps_engine_query(e.raw, nullptr, nullptr, &r), FPS_ERR_USAGE);
	fps_load_report report{};
	EXPECT_EQ(fps_engine_load_file(e.raw, "/nonexistent/file.nt", &report, nullptr), FPS_ERR_IO);
	char* out = nullptr;
	EXPECT_EQ(fps_generate_fixture("sales", 1, 10, &out), FPS_ERR_USAGE);
	EXPECT_EQ(fps_engine_export(e.raw, "unknown", &out), FPS_ERR_EVAL);
}

TEST(capi, load_diagnostics)
{
	Engine e;
	const char text[] = "a @type paper .\nthis line is broken\nb cites a .\n";
	fps_load_report report{};
	char* diag = nullptr;
	ASSERT_EQ(fps_engine_load_text(e.raw, text, sizeof text - 1, &report, &diag), FPS_OK);
	EXPECT_EQ(report.triples_read, 3u);  // triple lines seen, rejected included
	EXPECT_EQ(report.attribute_rows + report.relationship_rows, 2u);
	EXPECT_EQ(report.rejected_lines, 1u);
	EXPECT_EQ(take(diag).rfind("line 2:", 0), 0u);
}

TEST(capi, constructs_explain_export_persist)
{
	auto dir = std::filesystem::temp_directory_path() / "fpsparql_capi_test";
	std::filesystem::remove_all(dir);
	{
		Engine e;
		load_biblio(e.raw);
		fps_query_options o;
		fps_query_options_init(&o);
		o.explain = 1;
		fps_result* r = nullptr;
		ASSERT_EQ(fps_engine_query(e.raw,
		                           "fconstruct CAiSEPapers select ?p where { ?p @type paper. ?p publishedIn 'CAiSE'. }",
		                           &o, &r),
		          FPS_OK);
		EXPECT_EQ(fps_result_modified_store(r), 1);
		EXPECT_EQ(std::string(fps_result_explain(r)).rfind("FolderConstruct CAiSEPapers", 0), 0u);
		fps_result_free(r);
		char* out = nullptr;
		ASSERT_EQ(fps_engine_export(e.raw, "CAiSEPapers", &out), FPS_OK);
		EXPECT_EQ(take(out), "paper1\npaper3\n");
		ASSERT_EQ(fps_engine_explain(e.raw, "select ?p where { ?p @type paper. }", nullptr, &out), FPS_OK);
		EXPECT_EQ(take(out), "Project ?p\n  Scan ?p @type paper [entity] est=4\n");
		ASSERT_EQ(fps_engine_stats(e.raw, &out), FPS_OK);
		EXPECT_NE(take(out).find("folders\t1\n"), std::string::npos);
		ASSERT_EQ(fps_engine_persist(e.raw, dir.c_str()), FPS_OK);
	}
	fps_engine* reopened = nullptr;
	ASSERT_EQ(fps_engine_open(dir.c_str(), &reopened), FPS_OK);
	char* out = nullptr;
	ASSERT_EQ(fps_engine_export(reopened, "CAiSEPapers", &out), FPS_OK);
	EXPECT_EQ(take(out), "paper1\npaper3\n");
	fps_engine_free(reopened);
	std::filesystem::remove_all(dir);
}

TEST(capi, path_truncation_flag)
{
	Engine e;
	load_biblio(e.raw);
	fps_query_options o;
	fps_query_options_init(&o);
	o.max_paths = 1;
	fps_result* r = nullptr;
	ASSERT_EQ(fps_engine_query(e.raw,
	                           "pconstruct c (?s, ?t, ?e) where { ?s @type paper. ?t @type paper. ?e @isA edge. ?e @label citedBy. }",
	                           &o, &r),
	          FPS_OK);
	EXPECT_EQ(fps_result_truncated(r), 1);
	EXPECT_EQ(fps_result_warning_count(r), 1u);
	fps_result_free(r);
	o.reachability = FPS_REACH_GRIPP;
	EXPECT_EQ(fps_engine_query(e.raw,
	                           "pconstruct d (?s, ?t, ?e) where { ?s @type paper. ?t @type paper. ?e @isA edge. }",
	                           &o, &r),
	          FPS_ERR_EVAL);
}

TEST(capi, fixture_is_deterministic)
{
	char* a = nullptr;
	char* b = nullptr;
	ASSERT_EQ(fps_generate_fixture("events", 42, 200, &a), FPS_OK);
	ASSERT_EQ(fps_generate_fixture("events", 42, 200, &b), FPS_OK);
	EXPECT_EQ(take(a), take(b));
}
