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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// Drives the built binary through a shell, statements passed via files to
// keep quoting out of the way.

namespace fs = std::filesystem;

namespace {

struct Outcome {
	int code = -1;
	std::string out;
};

Outcome run(const std::string& args) {
	const std::string cmd = std::string(FPSPARQL_CLI) + " " + args + " 2>/dev/null";
	Outcome r;
	FILE* p = popen(cmd.c_str(), "r");
	if (!p) return r;
	char buf[4096];
	std::size_t n;
	while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
	int status = pclose(p);
	r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return r;
}

class Cli : public ::testing::Test {
protected:
	void SetUp() override {
		dir_ = fs::temp_directory_path() /
		       ("fpsparql_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
		fs::remove_all(dir_);
		fs::create_directories(dir_);
		store_ = (dir_ / "store").string();
		ASSERT_EQ(run("gen-fixture biblio --out " + path("biblio.nt")).code, 0);
	}
	void TearDown() override { fs::remove_all(dir_); }

	std::string path(const std::string& name) const { return (dir_ / name).string(); }

	std::string write(const std::string& name, const std::string& text) const {
		std::ofstream(path(name), std::ios::binary) << text;
		return path(name);
	}

	Outcome cli(const std::string& args) const { return run("--store " + store_ + " " + args); }

	Outcome load() const { return cli("load " + path("biblio.nt")); }

	Outcome query(const std::string& text, const std::string& flags = "") const {
		return run("--store " + store_ + " " + flags + " query --file " + write("q.txt", text));
	}

	fs::path dir_;
	std::string store_;
};

}  // namespace

TEST_F(Cli, load_summary)
{
	auto r = load();
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "loaded 38 triples from " + path("biblio.nt") +
	                     " (27 attribute rows, 11 relationship rows, 0 rejected lines)\n");
}

TEST_F(Cli, query_rows)
{
	load();
	auto r = query("select ?p where { ?p @type paper. ?p publishedIn 'CAiSE'. }");
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "p\npaper1\npaper3\n");
}

TEST_F(Cli, explain_precedes_rows)
{
	load();
	auto r = query("select ?p where { ?p @type paper. }", "--explain");
	EXPECT_EQ(r.out, "Project ?p\n  Scan ?p @type paper [entity] est=4\np\npaper1\npaper2\npaper3\npaper4\n");
}

TEST_F(Cli, exit_codes)
{
	EXPECT_EQ(run("query 'select ?p where { ?p @type paper. }'").code, 1);  // no --store
	EXPECT_EQ(run("--bogus").code, 1);
	load();
	EXPECT_EQ(query("select ?p where { ?p @type paper.").code, 2);
	EXPECT_EQ(query("(Nope) apply ( select ?p where { ?p @type paper. } )").code, 3);
	EXPECT_EQ(cli("load " + path("missing.nt")).code, 4);
	EXPECT_EQ(cli("query --file " + path("missing.txt")).code, 4);
	EXPECT_EQ(cli("export unknown").code, 3);
}

TEST_F(Cli, constructs_persist_between_runs)
{
	load();
	auto f = query("fconstruct CAiSEPapers select ?p where { ?p @type paper. ?p publishedIn 'CAiSE'. }");
	EXPECT_EQ(f.code, 0);
	EXPECT_EQ(f.out.substr(0, f.out.find('\n')), "folder\tnode\tmembers");
	auto p = query(
	    "pconstruct p2p1Path (?startNode,?endNode,(?e ?n)* ?citedByEdge (?n ?e)*) where { ?startNode @id p2. "
	    "?endNode @id p1. ?n @isA entityNode. ?e @isA edge. ?citedByEdge @isA edge. ?citedByEdge @label citedBy. }");
	EXPECT_EQ(p.code, 0);
	EXPECT_EQ(cli("export CAiSEPapers").out, "paper1\npaper3\n");
	EXPECT_EQ(cli("export p2p1Path").out, "paper2 citedBy paper4 citedBy paper3 citedBy paper1\n");
	EXPECT_EQ(query("fconstruct Empty select ?p where { ?p @type nothing. }").code, 0);
	auto empty = cli("export Empty");
	EXPECT_EQ(empty.code, 0);
	EXPECT_EQ(empty.out, "");
	EXPECT_EQ(cli("export CAiSEPapers " + path("members.txt")).code, 0);
	std::ifstream in(path("members.txt"));
	std::stringstream ss;
	ss << in.rdbuf();
	EXPECT_EQ(ss.str(), "paper1\npaper3\n");
}

TEST_F(Cli, repl_matches_batch)
{
	load();
	const std::string a = "select ?p where { ?p @type paper. }";
	const std::string b = "select ?a ?b where {\n ?a citedBy ?b.\n}";
	auto batch = query(a).out + query(b).out;
	auto repl = run("--store " + store_ + " repl < " + write("stmts.txt", a + "\n;\n" + b + "\n;\n"));
	EXPECT_EQ(repl.code, 0);
	EXPECT_EQ(repl.out, batch);
	auto no_final = run("--store " + store_ + " repl < " + write("stmts2.txt", a + "\n;\n" + b + "\n"));
	EXPECT_EQ(no_final.out, batch);
}

TEST_F(Cli, repl_reports_last_failure)
{
	load();
	auto r = run("--store " + store_ + " repl < " +
	             write("bad.txt", "select ?p where {\n;\nselect ?p where { ?p @type author. }\n;\n"));
	EXPECT_EQ(r.code, 2);
	EXPECT_EQ(r.out, "p\nauthor1\nauthor2\n");
}

TEST_F(Cli, gen_fixture_byte_identical)
{
	ASSERT_EQ(run("gen-fixture events --seed 42 --events 300 --out " + path("a.nt")).code, 0);
	ASSERT_EQ(run("gen-fixture events --seed 42 --events 300 --out " + path("b.nt")).code, 0);
	auto slurp = [&](const char* n) {
		std::ifstream in(path(n), std::ios::binary);
		std::stringstream ss;
		ss << in.rdbuf();
		return ss.str();
	};
	EXPECT_FALSE(slurp("a.nt").empty());
	EXPECT_EQ(slurp("a.nt"), slurp("b.nt"));
	EXPECT_EQ(run("gen-fixture events --seed 42 --events 300").out, slurp("a.nt"));
	EXPECT_EQ(run("gen-fixture sales").code, 1);
}

TEST_F(Cli, stats_and_explain)
{
	load();
	auto s = cli("stats");
	EXPECT_EQ(s.code, 0);
	EXPECT_NE(s.out.find("graph_rows\t11\n"), std::string::npos);
	auto e = cli("explain --file " + write("e.txt", "select ?p where { ?p @type paper. }"));
	EXPECT_EQ(e.out, "Project ?p\n  Scan ?p @type paper [entity] est=4\n");
}
