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
#include "isproc/pga.hpp"
#include "isproc/random.hpp"

using namespace isproc;

namespace {

PrimitiveInstruction plain(const char* a) { return PrimitiveInstruction::plain(BasicInstruction::action(a)); }

}  // namespace

TEST_CASE("eval computes eventually periodic values") {
  InstructionSeq a = eval(parse_pga("a"));
  CHECK(a.prefix() == std::vector{plain("a")});
  CHECK(a.period().empty());

  CHECK(eval(parse_pga("(a;b)*;c;!")) == eval(parse_pga("a;(b;a)*")));
  CHECK(eval(parse_pga("(a;b)*")) == eval(parse_pga("a;b;(a;b)*")));
}

TEST_CASE("normal form has minimal period and prefix") {
  InstructionSeq s = InstructionSeq::make({}, {plain("a"), plain("b"), plain("a"), plain("b")});
  CHECK(s.prefix().empty());
  CHECK(s.period() == std::vector{plain("a"), plain("b")});

  InstructionSeq r = InstructionSeq::make({plain("a")}, {plain("b"), plain("a")});
  CHECK(r.prefix().empty());
  CHECK(r.period() == std::vector{plain("a"), plain("b")});

  InstructionSeq f = InstructionSeq::make({plain("a"), plain("b")}, {});
  CHECK(f.prefix() == std::vector{plain("a"), plain("b")});
  CHECK(f.finite());

  CHECK_THROWS_AS(InstructionSeq::make({}, {}), InvariantError);
}

TEST_CASE("nth indexes prefix then period") {
  InstructionSeq s = InstructionSeq::make({plain("a")}, {plain("b"), plain("c")});
  CHECK(s.nth(4) == plain("b"));
  CHECK(s.nth(2) == plain("b"));
  CHECK(s.nth(3) == plain("c"));
  CHECK(s.nth(1) == plain("a"));
  CHECK_FALSE(s.nth(0).has_value());
  CHECK_FALSE(InstructionSeq::make({plain("a"), plain("b")}, {}).nth(5).has_value());
  InstructionSeq loop = InstructionSeq::make({}, {plain("a")});
  for (std::size_t k = 1; k < 20; ++k) CHECK(loop.nth(k) == plain("a"));
}

TEST_CASE("canonical terms") {
  CHECK(canonical_term(eval(parse_pga("+a;(#4;b;(-c;#5;!)*)*"))).str() == "+a;#4;b;(-c;#5;!)*");
  CHECK(canonical_term(eval(parse_pga("(a;b)*;c;!"))).str() == "(a;b)*");
  CHECK(canonical_term(eval(parse_pga("a"))).str() == "a");
}

TEST_CASE("term equality follows the axioms") {
  CHECK(term_equal(parse_pga("(a;b);c"), parse_pga("a;(b;c)")));
  CHECK(term_equal(parse_pga("a*;b"), parse_pga("a*")));
  CHECK(term_equal(parse_pga("(a;a)*"), parse_pga("a*")));
  CHECK(term_equal(parse_pga("(a;b)*"), parse_pga("a;(b;a)*")));
  CHECK_FALSE(term_equal(parse_pga("a;b"), parse_pga("b;a")));
}

TEST_CASE("parser accepts the instruction syntax") {
  PgaTerm t = parse_pga("+f.m;-ac(x,t);#3;!;(g.n)*");
  CHECK(t.str() == "+f.m;-ac(x,t);#3;!;g.n*");
  BasicInstruction b = parse_basic_instruction("ac(x,t)");
  CHECK(b.is_alt_choice());
  CHECK(b.first_choice() == "x");
  CHECK(b.second_choice() == "t");
  BasicInstruction fm = parse_basic_instruction("f.m");
  CHECK(fm.focus() == "f");
  CHECK(fm.method() == "m");
  CHECK(parse_basic_instruction("a").focus().empty());
}

TEST_CASE("parser rejects malformed input") {
  for (const char* bad : {"", ";", "a;", "(a", "a)", "#", "#x", "+", "+!", "a**b", "ac(x)", "A", "ac(t,t)x"})
    CHECK_THROWS_AS(parse_pga(bad), ParseError);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("a"));
  CHECK(is_identifier("br:1"));
  CHECK(is_identifier("set:T"));
  CHECK_FALSE(is_identifier(""));
  CHECK_FALSE(is_identifier("A"));
  CHECK_FALSE(is_identifier("a b"));
}

TEST_CASE("alphabet validation rejects the internal action") {
  Alphabet ok;
  ok.aacts = {"a", "b"};
  CHECK_NOTHROW(ok.validate());
  Alphabet bad;
  bad.aacts = {"t"};
  CHECK_THROWS_AS(bad.validate(), InvariantError);
}

TEST_CASE("property: printing and parsing are inverse") {
  Rng rng(11);
  const auto acts = bare_actions({"a", "f.m", "ac(b,t)"});
  for (int i = 0; i < 300; ++i) {
    PgaTerm t = random_pga_term(rng, 6, acts);
    PgaTerm back = parse_pga(t.str());
    CHECK(back.str() == t.str());
    CHECK(eval(back) == eval(t));
  }
}

TEST_CASE("property: canonical terms denote their sequence and have canonical shape") {
  Rng rng(12);
  const auto acts = bare_actions({"a", "b"});
  for (int i = 0; i < 300; ++i) {
    PgaTerm t = random_pga_term(rng, 6, acts);
    InstructionSeq s = eval(t);
    PgaTerm c = canonical_term(s);
    CHECK(eval(c) == s);
    CHECK(term_equal(c, t));
    CHECK(canonical_term(eval(c)).str() == c.str());
  }
}

TEST_CASE("property: unfolding and the axioms hold on random terms") {
  Rng rng(13);
  const auto acts = bare_actions({"a", "b", "c"});
  for (int i = 0; i < 200; ++i) {
    PgaTerm x = random_pga_term(rng, 3, acts), y = random_pga_term(rng, 3, acts), z = random_pga_term(rng, 3, acts);
    CHECK(eval(PgaTerm::repeat(x)) == eval(PgaTerm::concat(x, PgaTerm::repeat(x))));
    CHECK(term_equal(PgaTerm::concat(PgaTerm::concat(x, y), z), PgaTerm::concat(x, PgaTerm::concat(y, z))));
    CHECK(term_equal(PgaTerm::concat(PgaTerm::repeat(x), y), PgaTerm::repeat(x)));
    CHECK(term_equal(PgaTerm::repeat(PgaTerm::concat(x, y)),
                     PgaTerm::concat(x, PgaTerm::repeat(PgaTerm::concat(y, x)))));
  }
}
