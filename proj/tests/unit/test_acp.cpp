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

#include "isproc/acp.hpp"
#include "isproc/error.hpp"
#include "isproc/random.hpp"

using namespace isproc;

namespace {

Lts lin(const char* text) { return lts_of_linear(parse_linear(text)); }

const ActionLabel kA = ActionLabel::atomic("a");
const ActionLabel kB = ActionLabel::atomic("b");

bool has_label(const Lts& l, const ActionLabel& a) { return l.find_label(a).has_value(); }

// One step labelled `a` into a terminating state.
Lts step(const ActionLabel& a) {
  Lts l;
  l.set_root(l.add_state());
  l.add_transition(0, a, l.add_state(true));
  return l;
}

}  // namespace

TEST_CASE("labels print and parse") {
  for (const char* s : {"tau", "i", "j", "stp", "stp*", "snd[1](a)", "rcv[4](T)", "snd{f}(m)", "rcv{f}(B)",
                        "snd{}(a)", "snds(m)", "rcvs(T)", "go"})
    CHECK(parse_label(s).str() == s);
}

TEST_CASE("linear specifications") {
  Lts l = lin("X = a.X + b");
  CHECK(l.num_states() == 2);
  CHECK(l.num_transitions() == 2);
  CHECK(strong_bisim(lin("X = 0"), lin("Y = 0")));
  CHECK(lin("X = 0").num_states() == 1);
  CHECK_FALSE(lin("X = 0").terminating(0));
  LinearProcSpec rtc = parse_linear("R = rcv3:T.A + rcv3:F.B\nA = snd4:T.R\nB = snd4:F.R");
  CHECK(lts_of_linear(rtc).num_states() == 3);
  CHECK(parse_linear(rtc.str()) == rtc);
  for (const char* bad : {"", "X = ", "X = a.Y", "X = a\nX = b", "x = a"}) CHECK_THROWS(parse_linear(bad));
}

TEST_CASE("merge interleaves and communicates") {
  Lts m = merge(lin("X = a"), lin("Y = b"), CommFn::none());
  CHECK(strong_bisim(m, lin("X = a.P + b.Q\nP = b\nQ = a")));
  Lts c = merge(step(ActionLabel::snd(1, "d")), step(ActionLabel::rcv(1, "d")), CommFn::channels());
  CHECK(has_label(c, ActionLabel::internal_j()));
  Lts e = encapsulate(
      c, [](const ActionLabel& a) { return a.kind == ActionLabel::Kind::Snd || a.kind == ActionLabel::Kind::Rcv; });
  CHECK(strong_bisim(e, step(ActionLabel::internal_j())));
}

TEST_CASE("encapsulation, abstraction and renaming") {
  CHECK(strong_bisim(encapsulate(lin("X = a"), std::set<ActionLabel>{kA}), lin("X = 0")));
  CHECK(strong_bisim(abstract(lin("X = a"), std::set<ActionLabel>{kA}), step(ActionLabel::tau())));
  Lts r = rename(lin("X = a"), std::map<ActionLabel, ActionLabel>{{kA, kB}});
  CHECK(strong_bisim(r, lin("X = b")));
  CHECK_THROWS_AS(rename(lin("X = a"), std::map<ActionLabel, ActionLabel>{{kA, ActionLabel::tau()}}), InvariantError);
  CHECK_THROWS_AS(encapsulate(lin("X = a"), std::set<ActionLabel>{ActionLabel::tau()}), InvariantError);
}

TEST_CASE("process extraction") {
  Lts stop = process_extract(ThreadSpec::stop_spec());
  CHECK(stop.num_states() == 2);
  CHECK(has_label(stop, ActionLabel::stp()));
  ExtractOptions hidden;
  hidden.abstract_stp = true;
  Lts quiet = process_extract(ThreadSpec::stop_spec(), hidden);
  CHECK(quiet.out(quiet.root()).size() == 1);
  CHECK(quiet.label(quiet.out(quiet.root())[0].label).is_tau());

  Lts fm = process_extract(parse_thread("x = <f.m> y | z\ny = S\nz = D"));
  CHECK(fm.out(fm.root()).size() == 1);
  CHECK(fm.label(fm.out(fm.root())[0].label) == ActionLabel::snd_focus("f", "m"));
  Lts::State mid = fm.out(fm.root())[0].target;
  CHECK(fm.out(mid).size() == 2);

  Lts ac = process_extract(parse_thread("x = <ac(a,t)> y | z\ny = S\nz = D"));
  Lts expected;
  expected.set_root(expected.add_state());
  Lts::State y = expected.add_state(), z = expected.add_state();
  expected.add_transition(0, kA, y);
  expected.add_transition(0, ActionLabel::atomic("t"), z);
  expected.add_transition(y, ActionLabel::stp(), expected.add_state(true));
  CHECK(strong_bisim(ac, expected));
}

TEST_CASE("bisimulations") {
  CHECK(strong_bisim(lin("X = a.X"), lin("X = a.Y\nY = a.X")));
  CHECK_FALSE(strong_bisim(lin("X = a"), lin("X = a.Y\nY = 0")));
  Lts p = lin("X = a");
  CHECK(branching_bisim(tau_prefix(p), p));
  CHECK_FALSE(rooted_branching_bisim(tau_prefix(p), p));
  CHECK(rooted_branching_bisim(tau_prefix(tau_prefix(p)), tau_prefix(p)));
  CHECK_FALSE(branching_bisim(lin("X = a"), lin("X = b")));
  // A tau self-loop with an exit a is branching bisimilar to a plain a step.
  Lts loop;
  loop.set_root(loop.add_state());
  Lts::State end = loop.add_state(true);
  loop.add_transition(0, ActionLabel::tau(), 0);
  loop.add_transition(0, kA, end);
  CHECK(branching_bisim(loop, p));
}

TEST_CASE("projection of processes") {
  CHECK(strong_bisim(project_lts(lin("X = a.X"), 0), lin("X = 0")));
  Lts t = tau_prefix(lin("X = a"));
  CHECK(strong_bisim(project_lts(t, 1), t));
}

TEST_CASE("use at process level agrees with use on threads") {
  ThreadSpec t = parse_thread("x = <f.get> y | z\ny = S\nz = D");
  ExtractOptions aware;
  aware.service_aware = true;
  Service h = Service::boolean_register(Reply::True);
  Lts lhs = use_process(process_extract(t, aware), "f", h);
  std::set<ActionLabel> hidden{ActionLabel::internal_i()};
  CHECK(rooted_branching_bisim(abstract(lhs, hidden), abstract(process_extract(use(t, "f", h)), hidden)));
}

TEST_CASE("DOT export") {
  Lts stuck;
  stuck.set_root(stuck.add_state());
  CHECK(export_dot(stuck) == "digraph lts {\n  s0 [shape=circle];\n}\n");
  ExtractOptions hide_stp;
  hide_stp.abstract_stp = true;
  std::string dot = export_dot(process_extract(ThreadSpec::stop_spec(), hide_stp));
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(export_dot(lin("X = a.Y + b\nY = a.X")) == export_dot(lin("X = a.Y + b\nY = a.X")));
}

TEST_CASE("property: projection commutes with process extraction") {
  Rng rng(61);
  ThreadShape shape{5, thread_actions(bare_actions({"f.a", "g.c"}), true), 0.2, false};
  for (int i = 0; i < 100; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    for (std::size_t n = 0; n <= 4; ++n)
      CHECK(strong_bisim(process_extract(project(t, n)), project_lts(process_extract(t), 2 * n)));
  }
}

TEST_CASE("property: merge is associative up to strong bisimilarity") {
  Rng rng(62);
  for (int i = 0; i < 30; ++i) {
    Lts a = lts_of_linear(random_linear(rng, 2, 2, {"a", "b"}));
    Lts b = lts_of_linear(random_linear(rng, 2, 2, {"c"}));
    Lts c = lts_of_linear(random_linear(rng, 2, 2, {"d", "a"}));
    CHECK(strong_bisim(merge(merge(a, b, CommFn::none()), c, CommFn::none()),
                       merge(a, merge(b, c, CommFn::none()), CommFn::none())));
  }
}

TEST_CASE("property: a quotient is bisimilar to its source") {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    Lts l = abstract(lts_of_linear(random_linear(rng, 4, 3, {"a", "b", "c"})), std::set<ActionLabel>{kA});
    Lts q = branching_quotient(l);
    CHECK(q.num_states() <= l.num_states());
    CHECK(rooted_branching_bisim(tau_prefix(q), tau_prefix(l)));
    CHECK(branching_bisim(q, l));
  }
}
