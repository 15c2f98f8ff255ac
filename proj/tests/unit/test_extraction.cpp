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

#include "isproc/extraction.hpp"
#include "isproc/random.hpp"

using namespace isproc;

namespace {

ThreadSpec run(const char* pga) { return extract(eval(parse_pga(pga))); }

}  // namespace

TEST_CASE("worked extraction examples") {
  CHECK(thread_equal(run("a;b;c"), parse_thread("x = <a> y | y\ny = <b> z | z\nz = <c> w | w\nw = D")));
  CHECK(thread_equal(run("+a;#2;#3;b;!"), parse_thread("x = <a> y | d\ny = <b> s | s\ns = S\nd = D")));
  CHECK(thread_equal(run("+a;-b;c;!"), parse_thread("x = <a> y | z\ny = <b> s | z\nz = <c> s | s\ns = S")));
  CHECK(thread_equal(run("+a;#2;(b;#2;c;#2)*"), parse_thread("x = <a> d | y\nd = D\ny = <b> d | d")));
  CHECK(thread_equal(run("(a;+b)*"), parse_thread("x = <a> y | y\ny = <b> x | y")));
  CHECK(thread_equal(run("a;(+b;#2;#3;c;#4;-d;!;a)*"),
                     parse_thread("x = <a> y | y\ny = <b> c | e\nc = <c> y | y\ne = <d> x | s\ns = S")));
}

TEST_CASE("termination and inaction") {
  CHECK(thread_equal(run("!"), ThreadSpec::stop_spec()));
  CHECK(thread_equal(run("#0"), ThreadSpec::dead_spec()));
  CHECK(thread_equal(run("a"), parse_thread("x = <a> d | d\nd = D")));
  CHECK(thread_equal(run("(#1)*"), ThreadSpec::dead_spec()));
  CHECK(thread_equal(run("#2;a;(#2)*"), ThreadSpec::dead_spec()));
  CHECK(thread_equal(run("#5;a"), ThreadSpec::dead_spec()));
}

TEST_CASE("property: extracted threads are regular over the basic instructions and small") {
  Rng rng(31);
  const auto acts = bare_actions({"a", "b", "f.m"});
  std::set<ThreadAction> alphabet;
  for (const auto& b : acts) alphabet.insert(ThreadAction::basic(b));
  for (int i = 0; i < 300; ++i) {
    InstructionSeq s = eval(random_pga_term(rng, 6, acts));
    ThreadSpec t = extract(s);
    CHECK(regular_over(t, alphabet));
    CHECK(t.size() <= s.representation_size() + 1);
  }
}

TEST_CASE("property: jump-only sequences are inaction") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    std::vector<PrimitiveInstruction> prefix, period;
    for (std::size_t k = uniform(rng, 0, 4); k > 0; --k) prefix.push_back(PrimitiveInstruction::jump(uniform(rng, 0, 6)));
    for (std::size_t k = uniform(rng, prefix.empty() ? 1 : 0, 4); k > 0; --k)
      period.push_back(PrimitiveInstruction::jump(uniform(rng, 0, 6)));
    CHECK(thread_equal(extract(InstructionSeq::make(prefix, period)), ThreadSpec::dead_spec()));
  }
}
