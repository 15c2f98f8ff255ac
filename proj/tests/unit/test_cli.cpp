/*
 * Copyright 2026 The isproc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <sstream>

#include "isproc/cli.hpp"
#include "isproc/suite.hpp"

using namespace isproc;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "isproc");
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(ISPROC_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("extract prints the thread") {
  Outcome o = run({"extract", "-"}, "a;b;c");
  CHECK(o.code == 0);
  CHECK(o.out == "x0 = <a> x1 | x1\nx1 = <b> x2 | x2\nx2 = <c> x3 | x3\nx3 = D\n");
}

TEST_CASE("parse and normalize") {
  CHECK(run({"parse", "-"}, "(a;b)*;c;!").out == "(a;b)*;c;!\n");
  CHECK(run({"normalize", "-"}, "(a;b)*;c;!").out == "(a;b)*\n");
  CHECK(run({"parse", "--kind", "pgld", "-"}, "+a;##3").out == "+a;##3\n");
  CHECK(run({"parse", "--kind", "linear", "-"}, "X = a.X + b").out == "X = a.X + b\n");
}

TEST_CASE("pgld and use") {
  CHECK(run({"pgld", "-"}, "##0").out == "x0 = S\n");
  CHECK(run({"pgld", "--to-pga", "-"}, "a").out == "(a;!;!)*\n");
  Outcome u = run({"use", "--thread", data("get.spec"), "--focus", "f", "--register", "T"});
  CHECK(u.code == 0);
  CHECK(u.out == "x0 = <tau> x1 | x1\nx1 = S\n");
}

TEST_CASE("proc-extract emits DOT") {
  Outcome o = run({"proc-extract", "--pga", "-"}, "!");
  CHECK(o.code == 0);
  CHECK(o.out.starts_with("digraph lts {"));
}

TEST_CASE("verify") {
  CHECK(run({"verify", "simple", "--thread", data("stop.spec"), "--mode", "term-adjusted"}).code == 0);
  CHECK(run({"verify", "simple", "--thread", data("stop.spec"), "--mode", "literal"}).code == 1);
  Outcome c = run({"verify", "complex", "--thread", data("stop.spec"), "--maxlen", "2", "--capacity", "1"});
  CHECK(c.code == 0);
  CHECK(c.out.find("equivalent=true") != std::string::npos);
  Outcome d = run({"verify", "simple", "--thread", data("stop.spec"), "--dot", "-"});
  CHECK(d.out.starts_with("digraph lts {"));
}

TEST_CASE("simulate") {
  Outcome o = run({"simulate", "--exec", "5", "--latency", "1", "--protocol", "simple", "--steps", "10"});
  CHECK(o.code == 0);
  CHECK(o.out.find("utilization=5/7") != std::string::npos);
}

TEST_CASE("compile with checks") {
  Outcome t = run({"compile", "thread-to-pga", "--check", data("get.spec")});
  CHECK(t.code == 0);
  CHECK(t.out.find("check thread-to-pga pass") != std::string::npos);
  CHECK(run({"compile", "acp-to-pga", "--check", "-"}, "X = a.X + b").code == 0);
  Outcome p = run({"compile", "pga-to-pgld", "--check", "-"}, "a;!");
  CHECK(p.out == "a\ncheck pga-to-pgld pass\n");
  CHECK(run({"compile", "uniquify", "--check", "-"}, "+a;##4;##1;-a;##1;b").code == 0);
}

TEST_CASE("suite runs selected criteria") {
  Outcome o = run({"suite", "--criterion", "2", "--criterion", "10"});
  CHECK(o.code == 0);
  CHECK(o.out.find("criterion 2 PASS") != std::string::npos);
  CHECK(o.out.find("criterion 10 PASS") != std::string::npos);
}

TEST_CASE("usage and parse errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"extract", "--bogus", "-"}, "a").code == 2);
  CHECK(run({"extract", "-"}, "a;;").code == 2);
  CHECK(run({"extract", "/nonexistent/file"}).code == 2);
  CHECK(run({"verify", "complex", "--thread", data("stop.spec"), "--mode", "sometimes"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("suite report format") {
  CriterionResult r = run_criterion(2, SuiteOptions{});
  CHECK(r.pass);
  CHECK(r.cases.size() == 6);
  CHECK(summary_line(r).starts_with("criterion 2 PASS title=\"thread extraction examples\" cases=6 failures=0"));
  CHECK(format_result(r, true).find("case criterion=2") != std::string::npos);
  CHECK_THROWS(run_criterion(0, SuiteOptions{}));
}
