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

#include "fpsparql/error.hpp"
#include "fpsparql/value.hpp"

using namespace fpsparql;

TEST(value, render)
{
	EXPECT_EQ(Value::node("paper1").render(), "paper1");
	EXPECT_EQ(Value::string("a \"b\"").render(), "\"a \\\"b\\\"\"");
	EXPECT_EQ(Value::typed("2009-07-19", "xsd:date").render(), "\"2009-07-19\"^^xsd:date");
}

TEST(value, date_validation)
{
	EXPECT_NO_THROW(Value::typed("2008-02-29", "xsd:date"));
	EXPECT_THROW(Value::typed("2009-02-29", "xsd:date"), Error);
	EXPECT_THROW(Value::typed("2009-13-01", "xsd:date"), Error);
	EXPECT_THROW(Value::typed("19-07-2009", "xsd:date"), Error);
	EXPECT_NO_THROW(Value::typed("anything", "xsd:string"));
}

TEST(value, parse_date_order)
{
	auto a = parse_date("2009-07-20");
	auto b = parse_date("2009-07-19");
	ASSERT_TRUE(a && b);
	EXPECT_GT(*a, *b);
	EXPECT_FALSE(parse_date("2009-7-19"));
	EXPECT_FALSE(parse_date("1900-02-29"));
	EXPECT_TRUE(parse_date("2000-02-29"));
}

TEST(value, structural_equality)
{
	EXPECT_NE(Value::node("x"), Value::string("x"));
	EXPECT_NE(Value::typed("1", "xsd:integer"), Value::typed("1", "xsd:int"));
	EXPECT_EQ(Value::string("x"), Value::string("x"));
}

TEST(value, constant_matching)
{
	EXPECT_TRUE(Value::node("CAiSE").matches_constant(Value::string("CAiSE")));
	EXPECT_TRUE(Value::string("p2").matches_constant(Value::node("p2")));
	EXPECT_FALSE(Value::typed("p2", "xsd:string").matches_constant(Value::node("p2")));
	EXPECT_FALSE(Value::node("p2").matches_constant(Value::typed("p2", "xsd:string")));
}

TEST(value, escape)
{
	EXPECT_EQ(escape_string("a\tb\nc\\"), "a\\tb\\nc\\\\");
}

TEST(value, node_ids)
{
	EXPECT_TRUE(is_valid_node_id("paper1"));
	EXPECT_FALSE(is_valid_node_id(""));
	EXPECT_FALSE(is_valid_node_id("a b"));
	EXPECT_FALSE(is_valid_node_id("a\tb"));
}

TEST(dictionary, intern_and_match)
{
	Dictionary d;
	TermId n = d.intern(Value::node("CAiSE"));
	TermId s = d.intern(Value::string("CAiSE"));
	TermId t = d.intern(Value::typed("CAiSE", "xsd:string"));
	EXPECT_EQ(d.intern(Value::node("CAiSE")), n);
	EXPECT_EQ(d.size(), 3u);
	auto m = d.matching(Value::string("CAiSE"));
	std::sort(m.begin(), m.end());
	EXPECT_EQ(m, (std::vector<TermId>{n, s}));
	EXPECT_EQ(d.matching(Value::typed("CAiSE", "xsd:string")), std::vector<TermId>{t});
	EXPECT_TRUE(d.matching(Value::node("SIGMOD")).empty());
	EXPECT_EQ(d.find_node("CAiSE"), n);
}
