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

#include <algorithm>
#include <deque>
#include <functional>

#include "isproc/error.hpp"
#include "isproc/protocols.hpp"
#include "isproc/random.hpp"

using namespace isproc;

namespace {

BActiElem instr(const char* a) { return BActiElem::basic(parse_basic_instruction(a)); }

ExecEntry entry(const char* u, const char* a) { return ExecEntry{Replies::parse(u), instr(a)}; }

// Follows the unique path from the root while the system is deterministic
// and returns the labels seen.
std::vector<ActionLabel> linear_trace(const Lts& l, std::size_t limit) {
  std::vector<ActionLabel> out;
  Lts::State s = l.root();
  while (out.size() < limit && l.out(s).size() == 1) {
    out.push_back(l.label(l.out(s)[0].label));
    s = l.out(s)[0].target;
  }
  return out;
}

// Breadth-first search over a ComplexSystem for a path satisfying `goal`.
bool reachable(const ComplexSystem& sys, std::size_t bound,
               const std::function<bool(const std::vector<ComplexMove::Kind>&)>& goal) {
  std::deque<std::pair<ComplexState, std::vector<ComplexMove::Kind>>> todo{{sys.initial(), {}}};
  while (!todo.empty()) {
    auto [s, path] = todo.front();
    todo.pop_front();
    if (goal(path)) return true;
    if (path.size() >= bound) continue;
    for (auto& m : sys.moves(s)) {
      auto p = path;
      p.push_back(m.kind);
      todo.emplace_back(std::move(m.next), std::move(p));
    }
  }
  return false;
}

}  // namespace

TEST_CASE("reply sequences") {
  Replies r = Replies::parse("TFT");
  CHECK(r.size() == 3);
  CHECK(r.head());
  CHECK(r.tail().str() == "FT");
  CHECK(r.tail(3).empty());
  CHECK(r.push(false).str() == "TFTF");
  CHECK(r.starts_with(Replies::parse("TF")));
  CHECK_FALSE(r.starts_with(Replies::parse("F")));
  CHECK(Replies::parse("").empty());
  CHECK_THROWS(Replies::parse("TX"));
}

TEST_CASE("thread tables") {
  ThreadTable t(ThreadSpec::stop_spec());
  CHECK(t.act(t.root()) == BActiElem::stopd());
  CHECK(t.thrt(t.root()) == t.dead());
  CHECK(t.act(t.dead()) == BActiElem::deadd());
  ThreadTable u(parse_thread("x = <f.m> y | z\ny = S\nz = D"));
  CHECK(u.act(0) == instr("f.m"));
  CHECK(thread_equal(u.spec(u.thrf(0)), ThreadSpec::dead_spec()));
  CHECK(thread_equal(u.spec(u.thrt(0)), ThreadSpec::stop_spec()));
  CHECK_THROWS_AS(ThreadTable(parse_thread("x = <tau> x | x")), InvariantError);
  CHECK_THROWS_AS(ThreadTable(parse_thread("x = <ac(a,t)> x | x")), InvariantError);
}

TEST_CASE("enablea") {
  CHECK(enablea(BActiElem::stopd(), ThreadSpec::stop_spec()));
  CHECK(enablea(instr("f.m"), parse_thread("x = <f.m> y | z\ny = S\nz = D")));
  CHECK_FALSE(enablea(BActiElem::deadd(), ThreadSpec::stop_spec()));
}

TEST_CASE("generator updates") {
  GenState g{0, {{Replies::parse("T"), 1}, {Replies::parse("F"), 2}}};
  GenState after = updcr(true, g);
  CHECK(after.ack == 1);
  CHECK(after.pending == std::set<GenEntry>{{Replies{}, 1}});

  ThreadTable stop(ThreadSpec::stop_spec());
  GenState s{3, {{Replies{}, stop.root()}}};
  GenState sent = updpm(stop, {Replies{}, stop.root()}, s);
  CHECK(sent.pending.empty());
  CHECK(sent.ack == 0);

  ThreadTable fm(parse_thread("x = <f.m> y | z\ny = S\nz = D"));
  GenState f = updpm(fm, {Replies{}, 0}, GenState{2, {{Replies{}, 0}}});
  CHECK(f.ack == 0);
  CHECK(f.pending == std::set<GenEntry>{{Replies::parse("T"), fm.thrt(0)}, {Replies::parse("F"), fm.thrf(0)}});
  CHECK_THROWS_AS(updpm(fm, {Replies::parse("T"), 0}, GenState{}), InvariantError);
}

TEST_CASE("select keeps the shortest entries") {
  std::set<GenEntry> r{{Replies{}, 0}, {Replies::parse("T"), 1}};
  CHECK(select(r) == std::set<GenEntry>{{Replies{}, 0}});
  std::set<GenEntry> same{{Replies::parse("T"), 0}, {Replies::parse("F"), 1}};
  CHECK(select(same) == same);
  CHECK(select({}).empty());
}

TEST_CASE("execution unit updates") {
  ExecState x{2, {entry("", "b")}, {}};
  ExecState y = updcm(Msg{1, Replies::parse("TF"), instr("a")}, x);
  CHECK(y.unacked == 1);
  CHECK(y.table == std::set<ExecEntry>{entry("", "b"), entry("F", "a")});

  ExecState z = updcm(Msg{3, Replies::parse("TF"), instr("a")}, ExecState{2, {}, {}});
  CHECK(z.unacked == 0);
  CHECK(z.table == std::set<ExecEntry>{entry("TF", "a")});

  ExecState r = updpr(true, ExecState{0, {entry("T", "a"), entry("F", "b")}, {}});
  CHECK(r.unacked == 1);
  CHECK(r.table == std::set<ExecEntry>{entry("", "a")});

  CHECK(enable(instr("a"), r.table));
  CHECK_FALSE(enable(instr("b"), r.table));
}

TEST_CASE("filtering execution unit discards stale messages") {
  ExecState x = updpr_tracked(true, ExecState{0, {entry("T", "a"), entry("F", "b")}, {}});
  CHECK(x.history.str() == "T");
  // Sent before the reply T was acknowledged, for the F branch: stale.
  ExecState stale = updcm_filtered(Msg{0, Replies::parse("F"), instr("c")}, x);
  CHECK(stale.table == x.table);
  ExecState fresh = updcm_filtered(Msg{0, Replies::parse("TF"), instr("c")}, x);
  CHECK(fresh.table.count(entry("F", "c")) == 1);
}

TEST_CASE("simple protocol on the smallest threads") {
  ProtocolRun dead = build_simple(ThreadSpec::dead_spec(), TermMode::Literal);
  CHECK(linear_trace(dead.system, 10) == std::vector{ActionLabel::internal_j(), ActionLabel::internal_j()});
  CHECK(dead.stats.deadlocks == 1);

  ProtocolRun stop = build_simple(ThreadSpec::stop_spec(), TermMode::Adjusted);
  CHECK(linear_trace(stop.system, 10) == std::vector{ActionLabel::internal_j(), ActionLabel::internal_j()});
  CHECK(stop.stats.deadlocks == 0);

  ProtocolRun fm = build_simple(parse_thread("x = <f.m> y | z\ny = S\nz = D"), TermMode::Adjusted);
  auto trace = linear_trace(fm.system, 3);
  REQUIRE(trace.size() == 3);
  CHECK(trace[2] == ActionLabel::snd_focus("f", "m"));

  for (TermMode mode : {TermMode::Literal, TermMode::Adjusted})
    CHECK(verify_simple(ThreadSpec::dead_spec(), mode).equivalent);
  CHECK(verify_simple(ThreadSpec::stop_spec(), TermMode::Adjusted).equivalent);
  CHECK_FALSE(verify_simple(ThreadSpec::stop_spec(), TermMode::Literal).equivalent);
}

TEST_CASE("run-ahead protocol on the smallest threads") {
  for (std::size_t maxlen : {1, 2}) {
    ProtocolRun dead = build_complex(ThreadSpec::dead_spec(), ProtocolConfig{maxlen, 1}, TermMode::Literal);
    CHECK(dead.stats.deadlocks >= 1);
    CHECK(verify_complex(ThreadSpec::dead_spec(), ProtocolConfig{maxlen, 1}, TermMode::Literal).equivalent);
    CHECK(verify_complex(ThreadSpec::stop_spec(), ProtocolConfig{maxlen, 1}, TermMode::Adjusted).equivalent);
  }
}

TEST_CASE("the generator runs ahead of the replies") {
  ComplexSystem sys(parse_thread("x = <a> y | y\ny = <b> s | s\ns = S"), ProtocolConfig{2, 2}, Variant::Original);
  using K = ComplexMove::Kind;
  CHECK(reachable(sys, 4, [](const std::vector<K>& p) {
    return std::count(p.begin(), p.end(), K::Send) == 2 && std::count(p.begin(), p.end(), K::Receive) == 0;
  }));
}

TEST_CASE("message channel respects its capacity") {
  ComplexSystem sys(parse_thread("x = <a> x | x"), ProtocolConfig{3, 1}, Variant::Original);
  ComplexState s = sys.initial();
  for (int i = 0; i < 6; ++i) {
    auto moves = sys.moves(s);
    REQUIRE_FALSE(moves.empty());
    for (const auto& m : moves) CHECK(m.next.msg_channel.size() <= 1);
    s = moves.front().next;
  }
}

TEST_CASE("original protocol: stale speculative messages break equivalence") {
  // After a's reply T, the message sent for the F branch still reaches the
  // execution unit and is taken as the next instruction.
  ThreadSpec ab = parse_thread("x = <a> y | y\ny = <b> s | s\ns = S");
  VerifyResult original = verify_complex(ab, ProtocolConfig{1, 1}, TermMode::Adjusted, Variant::Original);
  CHECK_FALSE(original.equivalent);
  CHECK(original.stats.deadlocks > 0);
  CHECK(verify_complex(ab, ProtocolConfig{1, 1}, TermMode::Adjusted, Variant::Repaired).equivalent);
}

TEST_CASE("configuration validation and budget") {
  CHECK_THROWS_AS(ProtocolConfig({0, 1}).validate(), InvariantError);
  CHECK_THROWS_AS(ProtocolConfig({1, 0}).validate(), InvariantError);
  CHECK_THROWS_AS(build_complex(parse_thread("x = <a> x | x"), ProtocolConfig{3, 2, 50}, TermMode::Literal),
                  BudgetExceeded);
}

TEST_CASE("property: simple protocol is equivalent to the thread") {
  Rng rng(71);
  ThreadShape shape{5, thread_actions(bare_actions({"f.a", "f.b", "g.c"})), 0.2, false};
  for (int i = 0; i < 60; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    CHECK(verify_simple(t, TermMode::Adjusted).equivalent);
    if (!can_terminate(t)) CHECK(verify_simple(t, TermMode::Literal).equivalent);
  }
}

TEST_CASE("property: repaired run-ahead protocol is equivalent and bounded") {
  Rng rng(72);
  ThreadShape shape{3, thread_actions(bare_actions({"f.a", "g.c"})), 0.25, false};
  for (int i = 0; i < 25; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    TermMode mode = can_terminate(t) ? TermMode::Adjusted : TermMode::Literal;
    for (std::size_t maxlen : {1, 2}) {
      ProtocolRun run = build_complex(t, ProtocolConfig{maxlen, 1}, mode, Variant::Repaired);
      CHECK(rooted_branching_bisim(observable(run), reference_process(t)));
      CHECK(run.stats.max_pending_len <= maxlen + 1);
      CHECK(run.stats.max_counter <= maxlen + 1);
      CHECK(run.stats.ambiguous_exec_states == 0);
    }
  }
}

TEST_CASE("property: reply sequences stay bounded in the original protocol too") {
  Rng rng(73);
  ThreadShape shape{3, thread_actions(bare_actions({"f.a", "g.c"})), 0.25, false};
  for (int i = 0; i < 25; ++i) {
    ThreadSpec t = random_thread(rng, shape);
    for (std::size_t maxlen : {1, 2}) {
      ProtocolRun run = build_complex(t, ProtocolConfig{maxlen, 1}, TermMode::Adjusted, Variant::Original);
      CHECK(run.stats.max_pending_len <= maxlen + 1);
      // Acknowledgement counters may reach maxlen + 2 in this variant.
      CHECK(run.stats.max_counter <= maxlen + 2);
    }
  }
}
