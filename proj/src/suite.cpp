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

#include "isproc/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "isproc/acp.hpp"
#include "isproc/compilers.hpp"
#include "isproc/error.hpp"
#include "isproc/extraction.hpp"
#include "isproc/pga.hpp"
#include "isproc/pgld.hpp"
#include "isproc/protocols.hpp"
#include "isproc/random.hpp"
#include "isproc/services.hpp"
#include "isproc/thread.hpp"
#include "isproc/timing.hpp"

namespace isproc {

std::size_t CriterionResult::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn(0..n-1) on up to `jobs` threads. Results land in slots owned by
// each index, so no further synchronization is needed.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

// Runs one case, timing it and turning exceptions into failures.
CaseResult timed_case(std::string id, const std::function<bool(CaseResult&)>& body) {
  CaseResult c;
  c.id = std::move(id);
  auto t0 = Clock::now();
  try {
    c.pass = body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.note = std::string("exception: ") + e.what();
  }
  c.millis = millis_since(t0);
  return c;
}

std::vector<ThreadAction> protocol_pool() {
  return thread_actions(bare_actions({"f.a", "f.b", "g.c"}));
}

// -- 1: instruction sequence congruence ----------------------------------------

PgaTerm power(const PgaTerm& x, std::size_t n) {
  PgaTerm t = x;
  for (std::size_t i = 1; i < n; ++i) t = PgaTerm::concat(x, t);
  return t;
}

bool repetition_free(const PgaTerm& t) {
  switch (t.kind()) {
    case PgaTerm::Kind::Instr: return true;
    case PgaTerm::Kind::Concat: return repetition_free(t.lhs()) && repetition_free(t.rhs());
    case PgaTerm::Kind::Repeat: return false;
  }
  return false;
}

// t or t;t'* with t, t' repetition-free.
bool canonical_shape(const PgaTerm& t) {
  if (repetition_free(t)) return true;
  if (t.kind() == PgaTerm::Kind::Repeat) return repetition_free(t.body());
  if (t.kind() != PgaTerm::Kind::Concat || !repetition_free(t.lhs())) return false;
  return canonical_shape(t.rhs());
}

CriterionResult criterion1(const SuiteOptions& o) {
  CriterionResult r{1, "instruction sequence axioms", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 1);
  const auto acts = bare_actions({"a", "b", "c"});
  for (std::size_t i = 0; i < 1000; ++i) {
    PgaTerm lhs = PgaTerm::instr(PrimitiveInstruction::halt()), rhs = lhs;
    std::string axiom;
    switch (i % 4) {
      case 0: {
        auto x = random_pga_term(rng, 4, acts), y = random_pga_term(rng, 4, acts), z = random_pga_term(rng, 4, acts);
        lhs = PgaTerm::concat(PgaTerm::concat(x, y), z);
        rhs = PgaTerm::concat(x, PgaTerm::concat(y, z));
        axiom = "assoc";
        break;
      }
      case 1: {
        auto x = random_pga_term(rng, 3, acts);
        std::size_t n = uniform(rng, 1, 3);
        lhs = PgaTerm::repeat(power(x, n));
        rhs = PgaTerm::repeat(x);
        axiom = "power";
        break;
      }
      case 2: {
        auto x = random_pga_term(rng, 4, acts), y = random_pga_term(rng, 4, acts);
        lhs = PgaTerm::concat(PgaTerm::repeat(x), y);
        rhs = PgaTerm::repeat(x);
        axiom = "absorb";
        break;
      }
      default: {
        auto x = random_pga_term(rng, 3, acts), y = random_pga_term(rng, 3, acts);
        lhs = PgaTerm::repeat(PgaTerm::concat(x, y));
        rhs = PgaTerm::concat(x, PgaTerm::repeat(PgaTerm::concat(y, x)));
        axiom = "rotate";
        break;
      }
    }
    r.cases.push_back(timed_case(axiom + "-" + std::to_string(i), [&](CaseResult& c) {
      c.note = lhs.str() + " = " + rhs.str();
      return lhs.depth() <= 6 && rhs.depth() <= 6 && term_equal(lhs, rhs);
    }));
  }
  const std::pair<const char*, const char*> examples[] = {
      {"(a;b)*;c;!", "a;(b;a)*"},
      {"+a;(#4;b;(-c;#5;!)*)*", "+a;#4;b;(-c;#5;!)*"},
  };
  for (const auto& [l, rr] : examples) {
    r.cases.push_back(timed_case(std::string("example ") + l, [&](CaseResult& c) {
      PgaTerm lhs = parse_pga(l), rhs = parse_pga(rr);
      c.note = rhs.str();
      return canonical_shape(rhs) && term_equal(lhs, rhs) && term_equal(canonical_term(eval(lhs)), rhs);
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0 && r.seconds < 5;
  if (r.seconds >= 5) r.info.push_back("runtime limit of 5 s exceeded");
  return r;
}

// -- 2: thread extraction examples --------------------------------------------

CriterionResult criterion2(const SuiteOptions&) {
  CriterionResult r{2, "thread extraction examples", false, 0, {}, {}};
  auto t0 = Clock::now();
  const std::pair<const char*, const char*> examples[] = {
      {"a;b;c", "X = <a> Y | Y\nY = <b> Z | Z\nZ = <c> W | W\nW = D"},
      {"+a;#2;#3;b;!", "X = <a> Y | Z\nY = <b> W | W\nW = S\nZ = D"},
      {"+a;-b;c;!", "X = <a> Y | Z\nY = <b> W | Z\nZ = <c> W | W\nW = S"},
      {"+a;#2;(b;#2;c;#2)*", "X = <a> Y | Z\nY = D\nZ = <b> Y | Y"},
      {"(a;+b)*", "X = <a> Y | Y\nY = <b> X | Y"},
      {"a;(+b;#2;#3;c;#4;-d;!;a)*", "X = <a> Y | Y\nY = <b> C | E\nC = <c> Y | Y\nE = <d> X | W\nW = S"},
  };
  for (const auto& [prog, thread] : examples) {
    r.cases.push_back(timed_case(prog, [&](CaseResult& c) {
      ThreadSpec got = extract(eval(parse_pga(prog)));
      c.states = got.size();
      return thread_equal(got, parse_thread(thread));
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 3: residual round trip ----------------------------------------------------

CriterionResult criterion3(const SuiteOptions& o) {
  CriterionResult r{3, "residual table round trip", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 3);
  ThreadShape shape{8, thread_actions(bare_actions({"a", "b", "f.m", "ac(c,d)"}), true), 0.2, false};
  for (std::size_t i = 0; i < 500; ++i) {
    ThreadSpec s = random_thread(rng, shape);
    r.cases.push_back(timed_case("thread-" + std::to_string(i), [&](CaseResult& c) {
      c.states = s.size();
      return residuals(s).size() == s.size() && thread_equal(from_residual_table(residual_table(s), 0), s);
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 4: projection identity ----------------------------------------------------

CriterionResult criterion4(const SuiteOptions& o) {
  CriterionResult r{4, "projection commutes with process extraction", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 4);
  ThreadShape shape{6, thread_actions(bare_actions({"f.a", "f.b", "g.c"}), true), 0.2, false};
  for (std::size_t i = 0; i < 200; ++i) {
    ThreadSpec s = random_thread(rng, shape);
    r.cases.push_back(timed_case("thread-" + std::to_string(i), [&](CaseResult& c) {
      Lts whole = process_extract(s);
      c.states = whole.num_states();
      for (std::size_t n = 0; n <= 5; ++n)
        if (!strong_bisim(process_extract(project(s, n)), project_lts(whole, 2 * n))) {
          c.note = "differs at n=" + std::to_string(n);
          return false;
        }
      return true;
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 5: simple protocol --------------------------------------------------------

CriterionResult criterion5(const SuiteOptions& o) {
  CriterionResult r{5, "simple protocol", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 5);
  ThreadShape shape{6, protocol_pool(), 0.2, false};
  std::vector<ThreadSpec> threads;
  for (std::size_t i = 0; i < 200; ++i) threads.push_back(random_thread(rng, shape));
  r.cases.resize(threads.size());
  parallel_for(threads.size(), o.jobs, [&](std::size_t i) {
    r.cases[i] = timed_case("thread-" + std::to_string(i), [&](CaseResult& c) {
      const ThreadSpec& t = threads[i];
      bool ok = true;
      if (!can_terminate(t)) {
        VerifyResult lit = verify_simple(t, TermMode::Literal, o.budget);
        ok = ok && lit.equivalent;
        if (!lit.equivalent) c.note += "literal differs; ";
      }
      VerifyResult adj = verify_simple(t, TermMode::Adjusted, o.budget);
      if (!adj.equivalent) c.note += "adjusted differs; ";
      c.states = adj.stats.states;
      if (c.states >= 10000) c.note += "state space too large; ";
      return ok && adj.equivalent && c.states < 10000;
    });
    if (r.cases[i].millis >= 2000) {
      r.cases[i].pass = false;
      r.cases[i].note += "slower than 2 s";
    }
  });
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 6: run-ahead protocol -----------------------------------------------------

struct ComplexOutcome {
  std::size_t passed = 0;
  std::size_t checks = 0;
  std::size_t skipped = 0;
  std::size_t over_budget = 0;
  std::size_t consistent = 0;
  std::size_t consistency_checks = 0;
  std::size_t max_states = 0;
  std::size_t deadlocking = 0;
  std::size_t ambiguous = 0;
};

constexpr std::size_t kComplexConfigs = 6;

// Verifies one thread over all configurations and accumulates counts into
// `out`. With `stop_early` the remaining configurations are skipped once the
// verdict for the thread is known.
void add_note(CaseResult& c, const std::string& text) {
  if (!c.note.empty()) c.note += "; ";
  c.note += text;
}

bool run_complex_case(const ThreadSpec& t, Variant variant, std::size_t budget, bool stop_early, CaseResult& c,
                      ComplexOutcome& out) {
  const TermMode mode = can_terminate(t) ? TermMode::Adjusted : TermMode::Literal;
  const Lts ref = reference_process(t);
  bool ok = true;
  for (std::size_t cap : {1, 2}) {
    std::vector<Lts> views;
    for (std::size_t maxlen : {1, 2, 3}) {
      if (!ok && stop_early) {
        ++out.skipped;
        continue;
      }
      const std::string where = "maxlen=" + std::to_string(maxlen) + ",capacity=" + std::to_string(cap);
      ++out.checks;
      ProtocolRun run;
      try {
        run = build_complex(t, ProtocolConfig{maxlen, cap, budget}, mode, variant);
      } catch (const BudgetExceeded& e) {
        ++out.over_budget;
        ok = false;
        c.states = std::max(c.states, budget);
        add_note(c, where + " " + e.what());
        continue;
      }
      Lts view = observable(run);
      bool eq = rooted_branching_bisim(view, ref);
      out.passed += eq;
      out.max_states = std::max(out.max_states, run.stats.states);
      out.deadlocking += run.stats.deadlocks > 0 && !eq;
      out.ambiguous += run.stats.ambiguous_exec_states > 0;
      c.states = std::max(c.states, run.stats.states);
      if (!eq) {
        ok = false;
        add_note(c, where + " not equivalent");
      }
      views.push_back(branching_quotient(view));
    }
    if (views.size() < 3) continue;
    ++out.consistency_checks;
    bool same = rooted_branching_bisim(views[0], views[1]) && rooted_branching_bisim(views[1], views[2]);
    out.consistent += same;
    if (!same) {
      ok = false;
      add_note(c, "capacity=" + std::to_string(cap) + " differs across maxlen");
    }
  }
  return ok;
}

CriterionResult criterion6(const SuiteOptions& o) {
  CriterionResult r{6, "run-ahead protocol", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 6);
  ThreadShape shape{4, protocol_pool(), 0.2, false};
  std::vector<ThreadSpec> threads;
  for (std::size_t i = 0; i < 100; ++i) threads.push_back(random_thread(rng, shape));

  std::vector<Variant> variants{Variant::Original};
  if (o.repaired_reference) variants.push_back(Variant::Repaired);
  for (Variant variant : variants) {
    // The original protocol decides the verdict; the repaired protocol
    // is explored in full as a reference point.
    const bool original = variant == Variant::Original;
    std::vector<CaseResult> cases(threads.size());
    std::vector<ComplexOutcome> outcomes(threads.size());
    parallel_for(threads.size(), o.jobs, [&](std::size_t i) {
      cases[i] = timed_case("thread-" + std::to_string(i), [&](CaseResult& c) {
        return run_complex_case(threads[i], variant, o.budget, original, c, outcomes[i]);
      });
    });
    ComplexOutcome total;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < threads.size(); ++i) {
      const auto& x = outcomes[i];
      total.passed += x.passed;
      total.checks += x.checks;
      total.skipped += x.skipped;
      total.over_budget += x.over_budget;
      total.consistent += x.consistent;
      total.consistency_checks += x.consistency_checks;
      total.max_states = std::max(total.max_states, x.max_states);
      total.deadlocking += x.deadlocking;
      total.ambiguous += x.ambiguous;
      failed += !cases[i].pass;
    }
    std::ostringstream line;
    line << "variant=" << (original ? "original" : "repaired") << " threads=" << threads.size()
         << " failing_threads=" << failed << " equivalent_configs=" << total.passed << "/" << total.checks
         << " over_budget=" << total.over_budget << " skipped_after_failure=" << total.skipped << "/"
         << kComplexConfigs * threads.size() << " maxlen_consistent=" << total.consistent << "/"
         << total.consistency_checks << " max_states=" << total.max_states
         << " failing_configs_with_deadlock=" << total.deadlocking
         << " configs_with_two_ready_instructions=" << total.ambiguous;
    r.info.push_back(line.str());
    if (original) r.cases = std::move(cases);
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 7: completeness for regular processes -------------------------------------

bool compiled_produces(const LinearProcSpec& e, CaseResult& c) {
  PgaTerm compiled = acp_to_pgaac(e);
  c.states = extract(eval(compiled)).size();
  return realizes_linear(compiled, e);
}

CriterionResult criterion7(const SuiteOptions& o) {
  CriterionResult r{7, "regular processes from alternative choice", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 7);
  for (std::size_t i = 0; i < 100; ++i) {
    LinearProcSpec e = random_linear(rng, 4, 3, {"a", "b", "c", "d"});
    r.cases.push_back(timed_case("spec-" + std::to_string(i), [&](CaseResult& c) {
      c.note = e.str();
      return compiled_produces(e, c);
    }));
  }
  r.cases.push_back(timed_case("reply channel example", [&](CaseResult& c) {
    PgaTerm given = parse_pga(
        "(+ac(rcv3:T,t);#4;+ac(rcv3:F,t);#5;#7;+ac(snd4:T,t);#5;#9;+ac(snd4:F,t);#2;#9)*");
    LinearProcSpec rtc = parse_linear("R = rcv3:T.RT + rcv3:F.RF\nRT = snd4:T.R\nRF = snd4:F.R");
    return realizes_linear(given, rtc) && compiled_produces(rtc, c);
  }));
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 8: PGA and PGLD -----------------------------------------------------------

CriterionResult criterion8(const SuiteOptions& o) {
  CriterionResult r{8, "PGA and PGLD agree", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 8);
  const auto acts = bare_actions({"a", "b", "c"});
  for (std::size_t i = 0; i < 500; ++i) {
    PgaTerm t = random_pga_term(rng, 6, acts);
    r.cases.push_back(timed_case("term-" + std::to_string(i), [&](CaseResult& c) {
      PgldProgram p = pga_to_pgld(t);
      InstructionSeq s = eval(t);
      c.states = p.size();
      c.note = t.str() + " -> " + p.str();
      return p.size() <= s.representation_size() + 2 && thread_equal(interpret(p), extract(s));
    }));
  }
  for (std::size_t i = 0; i < 500; ++i) {
    PgldProgram p = random_pgld(rng, 10, acts);
    r.cases.push_back(timed_case("program-" + std::to_string(i), [&](CaseResult& c) {
      c.states = p.size();
      c.note = p.str();
      return thread_equal(produces(p), interpret(p));
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 9: register uniquification ------------------------------------------------

bool unique_occurrences(const PgldProgram& p, std::string& why) {
  std::map<BasicInstruction, std::size_t> basics;
  std::map<std::string, std::size_t> atoms;
  for (const auto& u : p.instructions()) {
    if (u.is_jump()) continue;
    const BasicInstruction& b = u.basic();
    if (b.is_alt_choice()) {
      for (const auto& e : {b.first_choice(), b.second_choice()})
        if (e != kInternalAction && ++atoms[e] > 1) why = "atomic action " + e + " repeated";
    } else if (!b.focus().starts_with(kRegisterPrefix) && ++basics[b] > 1) {
      why = "instruction " + b.str() + " repeated";
    }
  }
  return why.empty();
}

CriterionResult criterion9(const SuiteOptions& o) {
  CriterionResult r{9, "uniquification with Boolean registers", false, 0, {}, {}};
  auto t0 = Clock::now();
  Rng rng(o.seed * 1000 + 9);
  ThreadShape focus_shape{6, thread_actions(bare_actions({"f.a", "f.b", "g.c"})), 0.15, true};
  ThreadShape choice_shape{6, thread_actions(bare_actions({"ac(a,t)", "ac(b,t)"})), 0.15, true};
  for (std::size_t i = 0; i < 50; ++i) {
    ThreadSpec t = minimize(random_thread(rng, i % 2 ? choice_shape : focus_shape));
    r.cases.push_back(timed_case("thread-" + std::to_string(i), [&](CaseResult& c) {
      PgldProgram shaped = to_block_shape(t);
      Uniquified u = uniquify_with_registers(shaped);
      std::size_t conds = 0;
      for (const auto& s : t.states()) conds += s.kind == ThreadRhs::Kind::Cond;
      c.states = u.program.size();
      std::string why;
      bool unique = unique_occurrences(u.program, why);
      bool same = realizes_thread(u, t) && thread_equal(interpret(shaped), t);
      c.note = why + (same ? "" : " behaviour differs") + (u.registers == conds ? "" : " register count differs");
      return unique && same && u.registers == conds;
    }));
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

// -- 10: utilization -----------------------------------------------------------

CriterionResult criterion10(const SuiteOptions&) {
  CriterionResult r{10, "execution unit utilization", false, 0, {}, {}};
  auto t0 = Clock::now();
  const std::size_t n = 200;
  for (std::uint64_t E : {5, 10}) {
    for (std::uint64_t L : {1, 2}) {
      const std::string tag = "E=" + std::to_string(E) + ",L=" + std::to_string(L);
      r.cases.push_back(timed_case("simple " + tag, [&](CaseResult& c) {
        SimOptions so;
        so.protocol = TimedProtocol::Simple;
        so.maxlen = 1;
        so.timing = {E, L};
        Metrics m = simulate_timed(straight_line(n), so);
        c.states = m.executed;
        c.note = "utilization=" + m.utilization.str();
        Rational expected(static_cast<std::int64_t>(E), static_cast<std::int64_t>(E + 2 * L));
        return m.executed == n && m.starts == pipeline_oracle(n, E, L, 0) && m.utilization == expected;
      }));
      const std::size_t maxlen = (2 * L + E - 1) / E + 1;
      r.cases.push_back(timed_case("run-ahead " + tag + ",maxlen=" + std::to_string(maxlen), [&](CaseResult& c) {
        SimOptions so;
        so.protocol = TimedProtocol::RunAhead;
        so.maxlen = maxlen;
        so.timing = {E, L};
        Metrics m = simulate_timed(straight_line(n), so);
        c.states = m.executed;
        c.note = "utilization=" + m.utilization.str();
        return m.executed == n && m.starts == pipeline_oracle(n, E, L, maxlen) && m.utilization == Rational(1) &&
               m.idle_gaps.empty();
      }));
    }
  }
  r.seconds = millis_since(t0) / 1000;
  r.pass = r.failures() == 0;
  return r;
}

}  // namespace

std::vector<std::uint64_t> pipeline_oracle(std::size_t n, std::uint64_t exec, std::uint64_t latency,
                                           std::size_t depth) {
  std::vector<std::uint64_t> s;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t arrival = j <= depth ? latency : s[j - depth - 1] + exec + 2 * latency;
    s.push_back(j == 0 ? arrival : std::max(s[j - 1] + exec, arrival));
  }
  return s;
}

CriterionResult run_criterion(int number, const SuiteOptions& opts) {
  switch (number) {
    case 1: return criterion1(opts);
    case 2: return criterion2(opts);
    case 3: return criterion3(opts);
    case 4: return criterion4(opts);
    case 5: return criterion5(opts);
    case 6: return criterion6(opts);
    case 7: return criterion7(opts);
    case 8: return criterion8(opts);
    case 9: return criterion9(opts);
    case 10: return criterion10(opts);
    default: throw InvariantError("no criterion " + std::to_string(number));
  }
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "criterion " << r.number << " " << (r.pass ? "PASS" : "FAIL") << " title=\"" << r.title
      << "\" cases=" << r.cases.size() << " failures=" << r.failures() << " seconds=" << r.seconds;
  return out.str();
}

std::string format_result(const CriterionResult& r, bool with_cases) {
  std::ostringstream out;
  out << summary_line(r) << "\n";
  for (const auto& i : r.info) out << "info criterion=" << r.number << " " << i << "\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  std::size_t shown = 0;
  for (const auto& c : r.cases) {
    // Failing cases are always listed, up to a limit.
    if (!with_cases && (c.pass || shown >= 5)) continue;
    if (!c.pass) ++shown;
    out << "case criterion=" << r.number << " id=\"" << c.id << "\" result=" << (c.pass ? "pass" : "fail")
        << " states=" << c.states << " ms=" << c.millis;
    if (!c.note.empty()) out << " note=\"" << c.note << "\"";
    out << "\n";
  }
  return out.str();
}

}  // namespace isproc
