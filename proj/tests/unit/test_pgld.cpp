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

#include "isproc/error.hpp"
#include "isproc/extraction.hpp"
#include "isproc/pgld.hpp"
#include "isproc/random.hpp"

using namespace isproc;

TEST_CASE("translation to PGA") {
  CHECK(pgld2pga(parse_pgld("a")).str() == "(a;!;!)*");
  CHECK(pgld2pga(parse_pgld("+a;##3;##1")).str() == "(+a;#1;#3;!;!)*");
  CHECK(pgld2pga(parse_pgld("##0")).str() == "(!;!;!)*");
}

TEST_CASE("direct interpretation") {
  CHECK(thread_equal(interpret(parse_pgld("a")), parse_thread("x = <a> s | s\ns = S")));
  CHECK(thread_equal(interpret(parse_pgld("##1")), ThreadSpec::dead_spec()));
  CHECK(thread_equal(interpret(parse_pgld("##0")), ThreadSpec::stop_spec()));
  CHECK(thread_equal(interpret(parse_pgld("+a;##1;##0")), parse_thread("x = <a> x | s\ns = S")));
  CHECK(thread_equal(interpret(parse_pgld("a;##7")), parse_thread("x = <a> s | s\ns = S")));
  CHECK(thread_equal(interpret(parse_pgld("##2;##1")), ThreadSpec::dead_spec()));
}

TEST_CASE("both routes agree on the examples") {
  for (const char* p : {"a", "+a;##1;##0", "##1", "-a;b;##1;c", "+a;-b;##5;##1;##2"})
    CHECK(thread_equal(produces(parse_pgld(p)), interpret(parse_pgld(p))));
}

TEST_CASE("PGLD parser") {
  PgldProgram p = parse_pgld("+f.m;-a;##12;ac(x,t)");
  CHECK(p.size() == 4);
  CHECK(p.at(3).is_jump());
  CHECK(p.at(3).target() == 12);
  CHECK(p.str() == "+f.m;-a;##12;ac(x,t)");
  for (const char* bad : {"", "!", "#3", "a;;b", "##", "(a)*"}) CHECK_THROWS_AS(parse_pgld(bad), ParseError);
}

TEST_CASE("property: the direct reading agrees with the PGA route") {
  Rng rng(41);
  const auto acts = bare_actions({"a", "b", "f.m"});
  for (int i = 0; i < 400; ++i) {
    PgldProgram p = random_pgld(rng, 12, acts);
    CHECK(thread_equal(produces(p), interpret(p)));
    CHECK(parse_pgld(p.str()) == p);
  }
}
