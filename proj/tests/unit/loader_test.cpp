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

#include <sstream>

#include "fpsparql/error.hpp"
#include "fpsparql/loader.hpp"

using namespace fpsparql;

namespace {

LoadReport load(TripleStore& s, const std::string& text) {
	std::istringstream in(text);
	return load_triples(s, in);
}

}  // namespace

TEST(loader, routes_by_prefix)
{
	TripleStore s;
	auto r = load(s, "paper1 publishedIn CAiSE .\npaper1 @type paper .\n");
	EXPECT_EQ(r.triples_read, 2u);
	EXPECT_EQ(r.attribute_rows, 1u);
	EXPECT_EQ(r.relationship_rows, 1u);
	EXPECT_TRUE(r.rejected_lines.empty());
	EXPECT_EQ(s.out_edges("paper1").size(), 1u);
	EXPECT_EQ(s.scan_by_attribute("@type", Value::node("paper")), std::vector<std::string>{"paper1"});
}

TEST(loader, empty_stream)
{
	TripleStore s;
	auto r = load(s, "");
	EXPECT_EQ(r.triples_read, 0u);
	EXPECT_EQ(r.attribute_rows + r.relationship_rows, 0u);
	EXPECT_TRUE(r.rejected_lines.empty());
}

TEST(loader, object_forms)
{
	auto a = parse_triple_line("s @p \"say \\\"hi\\\" \\\\ now\" .");
	ASSERT_TRUE(a.triple);
	EXPECT_EQ(a.triple->object, Value::string("say \"hi\" \\ now"));
	auto b = parse_triple_line("e1\t@timestamp\t\"2009-07-19\"^^xsd:date\t.");
	ASSERT_TRUE(b.triple);
	EXPECT_EQ(b.triple->object, Value::typed("2009-07-19", "xsd:date"));
	auto c = parse_triple_line("  a   knows   b   .");
	ASSERT_TRUE(c.triple);
	EXPECT_EQ(c.triple->object, Value::node("b"));
	auto d = parse_triple_line("# comment");
	EXPECT_FALSE(d.triple);
	EXPECT_FALSE(d.error);
	EXPECT_FALSE(parse_triple_line("   ").error);
}

TEST(loader, rejects_are_counted)
{
	TripleStore s;
	auto r = load(s,
	              "a b .\n"                         // 2 tokens
	              "a @b \"open .\n"                 // unterminated
	              "a b c\n"                         // no terminator
	              "a @d \"2009-02-30\"^^xsd:date .\n" // bad date
	              "a rel \"literal\" .\n"           // literal relationship object
	              "# fine\n"
	              "a @ok yes .\n");
	EXPECT_EQ(r.triples_read, 6u);
	EXPECT_EQ(r.attribute_rows, 1u);
	EXPECT_EQ(r.relationship_rows, 0u);
	ASSERT_EQ(r.rejected_lines.size(), 5u);
	EXPECT_EQ(r.rejected_lines[0].first, 1u);
	EXPECT_EQ(r.rejected_lines[1].first, 2u);
	EXPECT_EQ(r.rejected_lines[4].first, 5u);
	EXPECT_EQ(r.triples_read, r.attribute_rows + r.relationship_rows + r.rejected_lines.size());
}

TEST(loader, duplicates_still_read)
{
	TripleStore s;
	auto r = load(s, "a @t x .\na @t x .\n");
	EXPECT_EQ(r.triples_read, 2u);
	EXPECT_EQ(s.entities().size(), 1u);
}

TEST(loader, io_error)
{
	TripleStore s;
	std::istringstream in("a @t x .\n");
	in.setstate(std::ios::badbit);
	EXPECT_THROW(load_triples(s, in), Error);
}

TEST(loader, object_token)
{
	EXPECT_EQ(parse_object_token("\"x\"^^xsd:integer"), Value::typed("x", "xsd:integer"));
	EXPECT_EQ(parse_object_token("node"), Value::node("node"));
	EXPECT_FALSE(parse_object_token("\"open"));
}
