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
#include "isproc/services.hpp"

using namespace isproc;

namespace {

const Service kFalse = Service::boolean_register(Reply::False);
const Service kTrue = Service::boolean_register(Reply::True);
const Service kBlocked = Service::boolean_register(Reply::Blocked);

}  // namespace

TEST_CASE("Boolean register effects") {
  CHECK(kFalse.derive("set:T").state() == kTrue.state());
  CHECK(kTrue.derive("get").state() == kTrue.state());
  for (const char* m : {"get", "set:T", "set:F", "other"}) CHECK(kBlocked.derive(m).state() == kBlocked.state());
  CHECK(kTrue.derive("other").state() == kBlocked.state());
}

TEST_CASE("Boolean register replies") {
  CHECK(kFalse.reply("get") == Reply::False);
  CHECK(kFalse.reply("set:T") == Reply::True);
  CHECK(kFalse.reply("set:F") == Reply::False);
  CHECK(kTrue.reply("other") == Reply::Blocked);
  CHECK(kBlocked.reply("get") == Reply::Blocked);
}

TEST_CASE("service descriptions") {
  Service s = parse_service("service toggle states {A,B} initial A\non flip A -> B reply T\non flip B -> A reply F");
  CHECK(s.name() == "toggle");
  CHECK(s.reply("flip") == Reply::True);
  CHECK(s.derive("flip").reply("flip") == Reply::False);
  CHECK(s.reply("other") == Reply::Blocked);
  CHECK(parse_service(s.str()).str() == s.str());
  CHECK(parse_service("br T").reply("get") == Reply::True);
  for (const char* bad : {"", "service", "service s states {A} initial Z", "service s states {A} initial A\non m A -> Q reply T",
                          "service s states {A} initial A\non m A -> A reply X"})
    CHECK_THROWS_AS(parse_service(bad), ParseError);
}

TEST_CASE("use") {
  CHECK(thread_equal(use(ThreadSpec::stop_spec(), "f", kFalse), ThreadSpec::stop_spec()));
  ThreadSpec get = parse_thread("x = <f.get> y | z\ny = S\nz = D");
  CHECK(thread_equal(use(get, "f", kTrue), parse_thread("x = <tau> y | y\ny = S")));
  CHECK(thread_equal(use(get, "f", kFalse), parse_thread("x = <tau> y | y\ny = D")));
  CHECK(thread_equal(use(parse_thread("x = <f.m> y | z\ny = S\nz = S"), "f", kBlocked),
                     parse_thread("x = <tau> y | y\ny = D")));
  CHECK(thread_equal(use(get, "g", kTrue), get));
}

TEST_CASE("a register remembers what was set") {
  ThreadSpec t = parse_thread("x = <f.set:T> y | y\ny = <f.get> s | d\ns = S\nd = D");
  CHECK(thread_equal(use(t, "f", kFalse), parse_thread("x = <tau> y | y\ny = <tau> s | s\ns = S")));
}

TEST_CASE("use chains") {
  ThreadSpec t = parse_thread("x = <f.get> y | z\ny = <g.get> s | z\nz = D\ns = S");
  CHECK(use_chain(t, {}) == t);
  CHECK(thread_equal(use_chain(t, {{"f", kTrue}}), use(t, "f", kTrue)));
  CHECK_THROWS_AS(use_chain(t, {{"f", kTrue}, {"f", kFalse}}), InvariantError);
}

TEST_CASE("property: disjoint foci commute") {
  Rng rng(51);
  ThreadShape shape{6, thread_actions(bare_actions({"f.get", "f.set:T", "g.get", "g.set:F", "h.m"})), 0.2, false};
  for (int i = 0; i < 200; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    Reply a = i % 2 ? Reply::True : Reply::False, b = i % 3 ? Reply::False : Reply::True;
    CHECK(thread_equal(use_chain(t, {{"f", Service::boolean_register(a)}, {"g", Service::boolean_register(b)}}),
                       use_chain(t, {{"g", Service::boolean_register(b)}, {"f", Service::boolean_register(a)}})));
  }
}
