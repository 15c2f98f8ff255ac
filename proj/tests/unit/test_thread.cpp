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
#include "isproc/random.hpp"
#include "isproc/thread.hpp"

using namespace isproc;

namespace {

ThreadAction act(const char* a) { return ThreadAction::basic(parse_basic_instruction(a)); }

// The five-state example: x = a . y, y = (c . y) <b> (x <d> S).
const char* kFiveState = "x = <a> y | y\ny = <b> c | e\nc = <c> y | y\ne = <d> x | s\ns = S";

}  // namespace

TEST_CASE("specs are trimmed and numbered breadth first") {
  ThreadSpec t = parse_thread("root p\nq = D\np = <a> r | q\nr = S\nu = <b> u | u");
  CHECK(t.size() == 3);
  CHECK(t.str() == "x0 = <a> x1 | x2\nx1 = S\nx2 = D\n");
  CHECK(parse_thread(t.str()) == t);
  CHECK_THROWS_AS(ThreadSpec::make({ThreadRhs::cond(act("a"), 0, 3)}, 0), InvariantError);
}

TEST_CASE("residuals") {
  ThreadSpec five = parse_thread(kFiveState);
  CHECK(residuals(five).size() == 5);
  CHECK(residuals(ThreadSpec::stop_spec()).size() == 1);
  CHECK(residuals(parse_thread("x = <a> x | x")).size() == 1);
}

TEST_CASE("regular_over") {
  ThreadSpec five = parse_thread(kFiveState);
  CHECK(regular_over(five, {act("a"), act("b"), act("c"), act("d")}));
  CHECK_FALSE(regular_over(five, {act("a"), act("b")}));
  CHECK(regular_over(ThreadSpec::stop_spec(), {}));
}

TEST_CASE("projection") {
  ThreadSpec loop = parse_thread("x = <a> x | x");
  CHECK(thread_equal(project(loop, 0), ThreadSpec::dead_spec()));
  CHECK(thread_equal(project(loop, 2), parse_thread("p = <a> q | q\nq = <a> r | r\nr = D")));
  CHECK(thread_equal(project(ThreadSpec::stop_spec(), 3), ThreadSpec::stop_spec()));
}

TEST_CASE("tau normalization") {
  ThreadSpec t = parse_thread("x = <tau> y | z\ny = S\nz = D");
  CHECK(normalize_tau(t) == parse_thread("x = <tau> y | y\ny = S"));
  ThreadSpec plain = parse_thread(kFiveState);
  CHECK(normalize_tau(plain) == plain);
  ThreadSpec n = parse_thread("x = <tau> y | y\ny = S");
  CHECK(normalize_tau(n) == n);
  CHECK(thread_equal(t, n));
}

TEST_CASE("thread equality") {
  CHECK(thread_equal(parse_thread("x = <a> x | x"),
                     parse_thread("y = <a> z | z\nz = <a> w | w\nw = <a> y | y")));
  CHECK_FALSE(thread_equal(ThreadSpec::stop_spec(), ThreadSpec::dead_spec()));
}

TEST_CASE("residual table round trip") {
  CHECK(from_residual_table({ThreadRhs::stop()}, 0) == parse_thread("x0 = S"));
  CHECK(from_residual_table({ThreadRhs::cond(act("a"), 1, 1), ThreadRhs::stop()}, 0) ==
        parse_thread("x0 = <a> x1 | x1\nx1 = S"));
  ThreadSpec five = parse_thread(kFiveState);
  CHECK(thread_equal(from_residual_table(residual_table(five), 0), five));
}

TEST_CASE("first action and continuations") {
  CHECK(first_action(ThreadSpec::stop_spec()) == BActiElem::stopd());
  CHECK(first_action(ThreadSpec::dead_spec()) == BActiElem::deadd());
  CHECK(thread_equal(step_true(ThreadSpec::stop_spec()), ThreadSpec::dead_spec()));
  ThreadSpec t = parse_thread("x = <f.m> y | z\ny = S\nz = <g.n> z | y");
  CHECK(first_action(t) == BActiElem::basic(parse_basic_instruction("f.m")));
  CHECK(thread_equal(step_false(t), parse_thread("z = <g.n> z | y\ny = S")));
  CHECK(thread_equal(step_true(t), ThreadSpec::stop_spec()));
  CHECK_THROWS_AS(first_action(parse_thread("x = <tau> x | x")), InvariantError);
}

TEST_CASE("thread parser errors") {
  for (const char* bad : {"", "x = ", "x = <a> y", "x = <a> y | z", "x = Q", "x = S\nx = D", "root q\nx = S"})
    CHECK_THROWS_AS(parse_thread(bad), ParseError);
}

TEST_CASE("property: minimization preserves the thread and is idempotent") {
  Rng rng(21);
  ThreadShape shape{8, thread_actions(bare_actions({"a", "b", "f.m"}), true), 0.2, false};
  for (int i = 0; i < 300; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    ThreadSpec m = minimize(t);
    CHECK(m.size() <= t.size());
    CHECK(thread_equal(m, t));
    CHECK(minimize(m) == m);
    CHECK(parse_thread(t.str()) == t);
  }
}

TEST_CASE("property: projections are consistent with equality") {
  Rng rng(22);
  ThreadShape shape{5, thread_actions(bare_actions({"a", "b"})), 0.25, false};
  for (int i = 0; i < 200; ++i) {
    ThreadSpec a = random_thread(rng, shape), b = random_thread(rng, shape);
    if (thread_equal(a, b))
      for (std::size_t n = 0; n <= 6; ++n) CHECK(thread_equal(project(a, n), project(b, n)));
    bool all_equal = true;
    for (std::size_t n = 0; n <= 12; ++n) all_equal = all_equal && thread_equal(project(a, n), project(b, n));
    CHECK(all_equal == thread_equal(a, b));
  }
}
