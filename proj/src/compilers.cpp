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

#include "isproc/compilers.hpp"

#include <map>
#include <set>

#include "isproc/error.hpp"
#include "isproc/extraction.hpp"

namespace isproc {

// -- Regular thread to PGA -----------------------------------------------------

PgaTerm thread_to_pga(const ThreadSpec& spec) {
  const std::uint64_t n = spec.size() - 1;
  using P = PrimitiveInstruction;
  std::vector<P> code;
  for (std::uint64_t i = 0; i <= n; ++i) {
    const ThreadRhs& r = spec.state(i);
    switch (r.kind) {
      case ThreadRhs::Kind::Stop:
        code.insert(code.end(), {P::halt(), P::halt(), P::halt()});
        break;
      case ThreadRhs::Kind::Dead:
        code.insert(code.end(), {P::jump(0), P::jump(0), P::jump(0)});
        break;
      case ThreadRhs::Kind::Cond: {
        if (r.action->is_tau()) throw InvariantError("thread_to_pga: tau is not a basic action");
        // Distance, in blocks, from block i forward (cyclically) to block x.
        auto blocks = [&](std::uint64_t x) { return i < x ? x - i : n + 1 - (i - x); };
        code.push_back(P::pos_test(r.action->instruction()));
        code.push_back(P::jump(3 * blocks(r.on_true) - 1));
        code.push_back(P::jump(3 * blocks(r.on_false) - 2));
        break;
      }
    }
  }
  return PgaTerm::repeat(PgaTerm::sequence(code));
}

// -- Linear process to alternative-choice thread ------------------------------

ThreadSpec linear_to_choice_thread(const LinearProcSpec& spec) {
  const auto& eqs = spec.equations();
  std::map<std::string, std::size_t> head;
  // Head states first, so that they keep their equation order.
  for (std::size_t i = 0; i < eqs.size(); ++i) head[eqs[i].var] = i;

  std::vector<ThreadRhs> states(eqs.size());
  const std::size_t stop = [&] {
    states.push_back(ThreadRhs::stop());
    return states.size() - 1;
  }();
  const std::string t(kInternalAction);
  auto choice = [&](const ActionLabel& a) {
    if (a.kind != ActionLabel::Kind::Atomic) throw InvariantError("only atomic actions may occur: " + a.str());
    if (a.payload == t) throw InvariantError("the internal action t may not occur");
    return ThreadAction::basic(BasicInstruction::alt_choice(a.payload, t));
  };

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    std::vector<const Summand*> steps, onlys;
    for (const auto& s : eqs[i].summands) {
      if (s.kind == Summand::Kind::Step) steps.push_back(&s);
      if (s.kind == Summand::Kind::Only) onlys.push_back(&s);
    }
    const std::size_t links = steps.size() + onlys.size();
    if (links == 0) {
      states[i] = ThreadRhs::dead();
      continue;
    }
    // Link c of the chain lives at states[i] for c = 0 and at a fresh
    // state otherwise; the last link falls back to the head.
    std::vector<std::size_t> at(links);
    at[0] = i;
    for (std::size_t c = 1; c < links; ++c) {
      states.push_back(ThreadRhs::dead());
      at[c] = states.size() - 1;
    }
    for (std::size_t c = 0; c < links; ++c) {
      std::size_t miss = c + 1 < links ? at[c + 1] : i;
      if (c < steps.size()) {
        states[at[c]] = ThreadRhs::cond(choice(steps[c]->label), head.at(steps[c]->target), miss);
      } else {
        states[at[c]] = ThreadRhs::cond(choice(onlys[c - steps.size()]->label), stop, miss);
      }
    }
  }
  return ThreadSpec::make(states, 0);
}

PgaTerm acp_to_pgaac(const LinearProcSpec& spec) { return thread_to_pga(linear_to_choice_thread(spec)); }

// -- PGA to PGLD ---------------------------------------------------------------

PgldProgram pga_to_pgld(const PgaTerm& t) {
  const InstructionSeq s = eval(t);
  const std::size_t p = s.prefix().size();
  const std::size_t q = s.period().size();
  const std::size_t n = p + q;
  std::vector<PrimitiveInstruction> code = s.prefix();
  code.insert(code.end(), s.period().begin(), s.period().end());

  // PGLD position reached by PGA position x (1-based), given that x is past
  // the end only when there is a period to wrap into.
  auto wrap = [&](std::uint64_t x) -> std::uint64_t { return x <= n ? x : p + 1 + (x - p - 1) % q; };

  std::vector<PgldInstruction> out;
  for (std::size_t j = 1; j <= n; ++j) {
    const PrimitiveInstruction& u = code[j - 1];
    switch (u.op()) {
      case PrimitiveInstruction::Op::Plain: out.push_back(PgldInstruction::plain(u.basic())); break;
      case PrimitiveInstruction::Op::PosTest: out.push_back(PgldInstruction::pos_test(u.basic())); break;
      case PrimitiveInstruction::Op::NegTest: out.push_back(PgldInstruction::neg_test(u.basic())); break;
      case PrimitiveInstruction::Op::Halt: out.push_back(PgldInstruction::jump(0)); break;
      case PrimitiveInstruction::Op::Jump: {
        const std::uint64_t x = j + u.offset();
        if (u.offset() == 0 || (q == 0 && x > n)) {
          out.push_back(PgldInstruction::jump(j));  // inaction
        } else {
          out.push_back(PgldInstruction::jump(wrap(x)));
        }
        break;
      }
    }
  }

  auto is_test = [](const PrimitiveInstruction& u) {
    return u.op() == PrimitiveInstruction::Op::PosTest || u.op() == PrimitiveInstruction::Op::NegTest;
  };
  const bool need2 = is_test(code[n - 1]);
  const bool need1 = need2 || code[n - 1].has_basic() || (n >= 2 && is_test(code[n - 2]));
  // Past the end, a finite sequence deadlocks and a periodic one wraps.
  for (std::size_t x = n + 1; x <= n + (need2 ? 2 : need1 ? 1 : 0); ++x)
    out.push_back(PgldInstruction::jump(q == 0 ? x : wrap(x)));
  // A final ##0 is redundant: leaving the program also terminates.
  while (out.size() > 1 && out.back().is_jump() && out.back().target() == 0) out.pop_back();
  return PgldProgram(std::move(out));
}

// -- Block shape and register uniquification ----------------------------------

namespace {

// Postconditional states of a thread, numbered 1..n in state order.
struct Blocks {
  std::vector<std::size_t> state_of;        // block -> thread state (index 0 unused)
  std::map<std::size_t, std::size_t> block;  // thread state -> block
  std::size_t n = 0;

  explicit Blocks(const ThreadSpec& spec) {
    state_of.push_back(0);
    for (std::size_t q = 0; q < spec.size(); ++q) {
      if (spec.state(q).kind != ThreadRhs::Kind::Cond) continue;
      block[q] = state_of.size();
      state_of.push_back(q);
    }
    n = state_of.size() - 1;
  }
};

}  // namespace

PgldProgram to_block_shape(const ThreadSpec& spec) {
  for (const auto& r : spec.states())
    if (r.kind == ThreadRhs::Kind::Cond && r.action->is_tau())
      throw InvariantError("to_block_shape: tau is not a basic action");
  if (spec.root().kind == ThreadRhs::Kind::Dead) return PgldProgram({PgldInstruction::jump(1)});
  Blocks b(spec);
  const std::uint64_t n = b.n;
  // Zero-based block index of a target: k in [0,n-1], n for S, n+1 for D.
  auto k = [&](std::size_t q) -> std::uint64_t {
    switch (spec.state(q).kind) {
      case ThreadRhs::Kind::Stop: return n;
      case ThreadRhs::Kind::Dead: return n + 1;
      case ThreadRhs::Kind::Cond: return b.block.at(q) - 1;
    }
    return n + 1;
  };
  std::vector<PgldInstruction> out;
  for (std::size_t i = 1; i <= n; ++i) {
    const ThreadRhs& r = spec.state(b.state_of[i]);
    out.push_back(PgldInstruction::pos_test(r.action->instruction()));
    out.push_back(PgldInstruction::jump(3 * k(r.on_true) + 1));
    out.push_back(PgldInstruction::jump(3 * k(r.on_false) + 1));
  }
  for (int i = 0; i < 3; ++i) out.push_back(PgldInstruction::jump(0));
  out.push_back(PgldInstruction::jump(3 * n + 4));
  return PgldProgram(std::move(out));
}

std::string register_focus(std::size_t i) { return std::string(kRegisterPrefix) + std::to_string(i); }

std::vector<std::pair<std::string, Service>> register_chain(std::size_t k) {
  std::vector<std::pair<std::string, Service>> chain;
  for (std::size_t i = 1; i <= k; ++i) chain.emplace_back(register_focus(i), Service::boolean_register(Reply::False));
  return chain;
}

namespace {

// Program builder with symbolic labels resolved in a second pass.
class Assembler {
 public:
  using Label = std::size_t;

  Label label() {
    where_.push_back(0);
    return where_.size() - 1;
  }
  void bind(Label l) { where_[l] = code_.size() + 1; }
  std::uint64_t here() const { return code_.size() + 1; }

  void emit(PgldInstruction u) { code_.push_back({std::move(u), std::nullopt}); }
  void jump_to(Label l) { code_.push_back({PgldInstruction::jump(0), l}); }

  PgldProgram finish() const {
    std::vector<PgldInstruction> out;
    for (const auto& [u, target] : code_) out.push_back(target ? PgldInstruction::jump(where_[*target]) : u);
    return PgldProgram(std::move(out));
  }

 private:
  std::vector<std::pair<PgldInstruction, std::optional<Label>>> code_;
  std::vector<std::uint64_t> where_;
};

BasicInstruction reg(std::size_t i, const char* method) {
  return BasicInstruction::focus_method(register_focus(i), method);
}

}  // namespace

Uniquified uniquify_with_registers(const PgldProgram& p) {
  for (const auto& u : p.instructions())
    if (!u.is_jump() && !u.basic().is_alt_choice() && u.basic().focus().starts_with(kRegisterPrefix))
      throw InvariantError("program already uses register focus " + u.basic().focus());

  const ThreadSpec spec = minimize(interpret(p));
  if (spec.root().kind == ThreadRhs::Kind::Stop) return {PgldProgram({PgldInstruction::jump(0)}), 0};
  if (spec.root().kind == ThreadRhs::Kind::Dead) return {PgldProgram({PgldInstruction::jump(1)}), 0};

  Blocks b(spec);
  const std::size_t n = b.n;
  std::map<BasicInstruction, std::vector<std::size_t>> users;  // action -> blocks
  for (std::size_t i = 1; i <= n; ++i)
    users[spec.state(b.state_of[i]).action->instruction()].push_back(i);

  Assembler a;
  const auto dispatch = a.label();
  std::map<BasicInstruction, Assembler::Label> handler;
  std::map<std::pair<BasicInstruction, bool>, Assembler::Label> successor;
  for (const auto& [act, blocks] : users) {
    handler[act] = a.label();
    successor[{act, true}] = a.label();
    successor[{act, false}] = a.label();
  }
  std::map<std::pair<std::size_t, bool>, Assembler::Label> update;
  for (std::size_t i = 1; i <= n; ++i)
    for (bool r : {true, false}) update[{i, r}] = a.label();

  // The root is block 1.
  a.emit(PgldInstruction::plain(reg(1, "set:T")));

  // Dispatcher: find the register that is set and run the action of its
  // state.
  a.bind(dispatch);
  for (std::size_t i = 1; i <= n; ++i) {
    a.emit(PgldInstruction::pos_test(reg(i, "get")));
    a.jump_to(handler[spec.state(b.state_of[i]).action->instruction()]);
  }
  a.emit(PgldInstruction::jump(a.here()));  // no register set: unreachable

  // Handlers: the only occurrence of each action.
  for (const auto& [act, blocks] : users) {
    a.bind(handler[act]);
    a.emit(PgldInstruction::pos_test(act));
    a.jump_to(successor[{act, true}]);
    a.jump_to(successor[{act, false}]);
  }

  // Successor selection: among the states performing the action, find the
  // current one.
  for (const auto& [act, blocks] : users) {
    for (bool r : {true, false}) {
      a.bind(successor[{act, r}]);
      for (std::size_t i : blocks) {
        a.emit(PgldInstruction::pos_test(reg(i, "get")));
        a.jump_to(update[{i, r}]);
      }
      a.emit(PgldInstruction::jump(a.here()));  // unreachable
    }
  }

  // Register updates: leave state i for its successor on reply r.
  for (std::size_t i = 1; i <= n; ++i) {
    const ThreadRhs& rhs = spec.state(b.state_of[i]);
    for (bool r : {true, false}) {
      a.bind(update[{i, r}]);
      const std::size_t next = r ? rhs.on_true : rhs.on_false;
      switch (spec.state(next).kind) {
        case ThreadRhs::Kind::Stop: a.emit(PgldInstruction::jump(0)); break;
        case ThreadRhs::Kind::Dead: a.emit(PgldInstruction::jump(a.here())); break;
        case ThreadRhs::Kind::Cond: {
          const std::size_t j = b.block.at(next);
          if (j != i) {
            a.emit(PgldInstruction::plain(reg(i, "set:F")));
            a.emit(PgldInstruction::plain(reg(j, "set:T")));
          }
          a.jump_to(dispatch);
          break;
        }
      }
    }
  }
  return {a.finish(), n};
}

bool realizes_linear(const PgaTerm& compiled, const LinearProcSpec& spec) {
  ExtractOptions opts;
  opts.abstract_stp = true;
  Lts lhs = tau_prefix(abstract(process_extract(extract(eval(compiled)), opts),
                                std::set<ActionLabel>{ActionLabel::atomic(std::string(kInternalAction))}));
  return rooted_branching_bisim(lhs, tau_prefix(lts_of_linear(spec)));
}

bool realizes_thread(const Uniquified& u, const ThreadSpec& original) {
  ExtractOptions opts;
  opts.abstract_stp = true;
  ThreadSpec closed = use_chain(interpret(u.program), register_chain(u.registers));
  Lts lhs = tau_prefix(abstract(process_extract(closed, opts), std::set<ActionLabel>{ActionLabel::internal_i()}));
  return rooted_branching_bisim(lhs, tau_prefix(process_extract(original, opts)));
}

}  // namespace isproc
