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

#include <algorithm>
#include <variant>

#include "corpus.hpp"
#include "fpsparql/error.hpp"
#include "fpsparql/evaluator.hpp"
#include "fpsparql/parser.hpp"
#include "oracle.hpp"

using namespace fpsparql;

namespace {

SelectQuery select(std::string_view text) { return std::get<SelectQuery>(parse(text)); }

std::vector<std::vector<std::string>> rows_of(const BindingTable& t, const TripleStore& s) {
	std::vector<std::vector<std::string>> out;
	for (const auto& r : t.canonical_rows(t.vars())) {
		std::vector<std::string> cells;
		for (TermId id : r) cells.push_back(s.text(id));
		out.push_back(std::move(cells));
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<std::vector<std::string>> run(std::string_view text, const TripleStore& s) {
	QueryAst q = parse(text);
	if (auto* a = std::get_if<ApplyQuery>(&q)) return rows_of(eval_apply(*a, s), s);
	return rows_of(eval_select(std::get<SelectQuery>(q), s), s);
}

using Rows = std::vector<std::vector<std::string>>;

ErrorKind kind_of(auto&& fn) {
	try {
		fn();
	} catch (const Error& e) {
		return e.kind();
	}
	return ErrorKind::kUsage;
}

}  // namespace

TEST(evaluator, filter_regex_and_dates)
{
	auto f = select("select ?t where { ?p @title ?t. filter regex(?t, \"SQL\"). }").where.filters[0];
	EXPECT_TRUE(eval_filter(f, {{"t", Value::string("Querying SQL Graphs")}}));
	EXPECT_FALSE(eval_filter(f, {{"t", Value::string("Querying sql Graphs")}}));

	auto d = select(
	             "select ?d where { ?e @timestamp ?d. filter (?d > \"2009-07-19\"^^xsd:date). }")
	             .where.filters[0];
	EXPECT_TRUE(eval_filter(d, {{"d", Value::typed("2009-07-20", "xsd:date")}}));
	EXPECT_FALSE(eval_filter(d, {{"d", Value::typed("2009-07-19", "xsd:date")}}));
	// An untyped value never orders against a date.
	EXPECT_FALSE(eval_filter(d, {{"d", Value::string("abc")}}));
}

TEST(evaluator, filter_numeric_and_lexical)
{
	auto n = select("select ?s where { ?x @score ?s. filter (?s < \"10\"^^xsd:integer). }").where.filters[0];
	EXPECT_TRUE(eval_filter(n, {{"s", Value::typed("9", "xsd:integer")}}));
	EXPECT_FALSE(eval_filter(n, {{"s", Value::typed("10", "xsd:integer")}}));
	auto l = select("select ?y where { ?p @year ?y. filter (?y >= '2009'). }").where.filters[0];
	EXPECT_TRUE(eval_filter(l, {{"y", Value::string("2010")}}));
	EXPECT_FALSE(eval_filter(l, {{"y", Value::string("2008")}}));
}

TEST(evaluator, filter_errors)
{
	auto f = select("select ?t where { ?p @title ?t. filter regex(?t, \"(\"). }").where.filters[0];
	EXPECT_EQ(kind_of([&] { eval_filter(f, {{"t", Value::string("x")}}); }), ErrorKind::kEvaluation);
	EXPECT_EQ(kind_of([&] { eval_filter(f, std::map<std::string, Value>{}); }), ErrorKind::kEvaluation);
}

TEST(evaluator, caise_papers)
{
	TripleStore s;
	corpus::load_biblio(s);
	EXPECT_EQ(run(corpus::kBiblio[1].text, s), (Rows{{"paper1"}, {"paper3"}}));
	EXPECT_EQ(run("select ?p where { ?p @type paper. }", s),
	          (Rows{{"paper1"}, {"paper2"}, {"paper3"}, {"paper4"}}));
}

TEST(evaluator, example5_small_fixture)
{
	// Web page of the author of the chapter "Querying RDF Data".
	TripleStore s;
	s.insert_attribute({"book1", "@type", Value::node("book")});
	s.insert_attribute({"chapter1", "@type", Value::node("chapter")});
	s.insert_attribute({"chapter1", "@title", Value::string("Querying RDF Data")});
	s.insert_attribute({"chapter2", "@type", Value::node("chapter")});
	s.insert_attribute({"chapter2", "@title", Value::string("Storing RDF Data")});
	s.insert_attribute({"alice", "@webPage", Value::string("http://example.org/alice")});
	s.insert_attribute({"bob", "@webPage", Value::string("http://example.org/bob")});
	s.insert_relationship({"book1", "hasChapter", "chapter1", std::nullopt});
	s.insert_relationship({"book1", "hasChapter", "chapter2", std::nullopt});
	s.insert_relationship({"chapter1", "writtenBy", "alice", std::nullopt});
	s.insert_relationship({"chapter2", "writtenBy", "bob", std::nullopt});
	auto rows = run(
	    "select ?w where { ?c @type chapter. ?c @title 'Querying RDF Data'. ?c writtenBy ?a. ?a @webPage ?w. }",
	    s);
	EXPECT_EQ(rows, (Rows{{"http://example.org/alice"}}));
}

TEST(evaluator, citation_chain_join)
{
	TripleStore s;
	corpus::load_biblio(s);
	EXPECT_EQ(run(corpus::kBiblio[15].text, s),
	          (Rows{{"paper2", "paper4", "paper3"}, {"paper4", "paper3", "paper1"}}));
}

TEST(evaluator, variable_predicate_reads_both_stores)
{
	TripleStore s;
	corpus::load_biblio(s);
	auto rows = run("select ?k where { paper2 ?k ?o. }", s);
	EXPECT_EQ(rows, (Rows{{"@id"}, {"@title"}, {"@type"}, {"@year"}, {"authoredBy"}, {"citedBy"},
	                      {"publishedIn"}}));
}

TEST(evaluator, empty_store_gives_empty_result)
{
	TripleStore s;
	auto t = eval_select(select("select ?p where { ?p @type paper. ?p citedBy ?q. }"), s);
	EXPECT_TRUE(t.empty());
	EXPECT_EQ(t.vars(), std::vector<std::string>{"p"});
}

TEST(evaluator, example6_folder)
{
	TripleStore s;
	corpus::load_biblio(s);
	auto q = std::get<FconstructQuery>(parse(corpus::kBiblio[2].text));
	auto out = eval_fconstruct(q, s);
	EXPECT_EQ(out.member_count, 2u);
	const auto& rec = s.folder(out.folder);
	std::vector<std::string> members;
	for (TermId m : rec.members) members.push_back(s.text(m));
	std::sort(members.begin(), members.end());
	EXPECT_EQ(members, (std::vector<std::string>{"paper1", "paper3"}));
	auto holders = s.scan_by_attribute("@description", Value::string("set of ..."));
	EXPECT_EQ(holders, std::vector<std::string>{s.text(out.folder)});
	EXPECT_EQ(kind_of([&] { eval_fconstruct(q, s); }), ErrorKind::kConflict);
}

TEST(evaluator, fconstruct_literal_member_rejected)
{
	TripleStore s;
	corpus::load_biblio(s);
	auto q = std::get<FconstructQuery>(parse("fconstruct Titles select ?t where { ?p @title ?t. }"));
	EXPECT_EQ(kind_of([&] { eval_fconstruct(q, s); }), ErrorKind::kEvaluation);
	EXPECT_FALSE(s.find_folder("Titles"));
}

TEST(evaluator, apply_on_empty_folder)
{
	TripleStore s;
	corpus::load_biblio(s);
	eval_fconstruct(std::get<FconstructQuery>(parse("fconstruct None select ?p where { ?p @type nothing. }")),
	                s);
	EXPECT_TRUE(run("(None) apply ( select ?p where { ?p @type paper. } )", s).empty());
}

TEST(evaluator, example9_and_example10)
{
	TripleStore s;
	corpus::load_biblio(s);
	for (int i : {2, 3}) eval_fconstruct(std::get<FconstructQuery>(parse(corpus::kBiblio[i].text)), s);
	EXPECT_EQ(run(corpus::kBiblio[9].text, s), (Rows{{"paper1"}}));
	EXPECT_EQ(run(corpus::kBiblio[10].text, s), (Rows{{"paper1"}, {"paper2"}}));
}

TEST(evaluator, scope_restriction_is_monotone)
{
	// A larger folder never yields fewer rows.
	TripleStore s;
	corpus::load_biblio(s);
	s.create_folder("Small", {}, std::vector<std::string>{"paper1"});
	s.create_folder("Large", {}, std::vector<std::string>{"paper1", "paper2", "paper4"});
	for (const auto& body : corpus::select_bodies()) {
		auto small = rows_of(eval_apply({ScopeExpr::named("Small"), body}, s), s);
		auto large = rows_of(eval_apply({ScopeExpr::named("Large"), body}, s), s);
		auto whole = rows_of(eval_select(body, s), s);
		EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end())) << to_text(body);
		EXPECT_TRUE(std::includes(whole.begin(), whole.end(), large.begin(), large.end())) << to_text(body);
	}
}

TEST(evaluator, scan_counters_see_folder_rows)
{
	TripleStore s;
	corpus::load_biblio(s);
	s.create_folder("One", {}, std::vector<std::string>{"paper1"});
	auto q = std::get<ApplyQuery>(parse("(One) apply ( select ?p ?a where { ?p authoredBy ?a. } )"));
	ScanCounters scoped, whole;
	eval_apply(q, s, &scoped);
	eval_select(q.inner, s, &whole);
	EXPECT_EQ(scoped.graph_rows, 0u);
	EXPECT_GT(scoped.folder_rows, 0u);
	EXPECT_LT(scoped.relationship_rows(), whole.relationship_rows());
}

TEST(evaluator, render_tsv_sorted_with_header)
{
	TripleStore s;
	corpus::load_biblio(s);
	auto t = eval_select(select("select ?p ?y where { ?p @year ?y. ?p publishedIn CAiSE. }"), s);
	EXPECT_EQ(render_tsv(t, s.dictionary()), "p\ty\npaper1\t\"2010\"\npaper3\t\"2010\"\n");
}

TEST(evaluator, matches_oracle_on_biblio_bodies)
{
	TripleStore s;
	corpus::load_biblio(s);
	oracle::FactBase facts(s);
	for (const auto& body : corpus::select_bodies())
		EXPECT_EQ(oracle::decode(eval_select(body, s), body.projection, s.dictionary()),
		          oracle::select(body, facts))
		    << to_text(body);
}

TEST(evaluator, constant_subjects_scoped_when_no_variable_subject)
{
	TripleStore s;
	corpus::load_biblio(s);
	s.create_folder("Has2", {}, std::vector<std::string>{"paper2"});
	s.create_folder("No2", {}, std::vector<std::string>{"paper1"});
	const std::string body = " apply ( select ?p ?k where { paper2 ?k ?p. } )";
	EXPECT_EQ(run("(Has2)" + body, s).size(), 7u);
	EXPECT_TRUE(run("(No2)" + body, s).empty());
	EXPECT_TRUE(run("(Has2 minus Has2)" + body, s).empty());
	// A variable subject anywhere keeps the variable rule: ?x is scoped, paper2 is not.
	EXPECT_EQ(run("(No2) apply ( select ?x where { paper2 citedBy ?x. ?x @type paper. } )", s), Rows{});
	s.create_folder("Has4", {}, std::vector<std::string>{"paper4"});
	EXPECT_EQ(run("(Has4) apply ( select ?x where { paper2 citedBy ?x. ?x @type paper. } )", s),
	          (Rows{{"paper4"}}));
}
