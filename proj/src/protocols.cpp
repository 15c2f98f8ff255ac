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

#include "isproc/protocols.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "isproc/error.hpp"

namespace isproc {

// -- Replies -------------------------------------------------------------------

Replies Replies::parse(std::string_view s) {
  Replies r;
  for (char c : s) {
    if (c != 'T' && c != 'F') throw ParseError("reply sequence must be over T and F");
    r = r.push(c == 'T');
  }
  return r;
}

Replies Replies::tail() const { return tail(1); }

Replies Replies::tail(std::size_t k) const {
  if (k >= len_) return {};
  Replies r;
  r.len_ = static_cast<std::uint8_t>(len_ - k);
  r.bits_ = bits_ >> k;
  return r;
}

Replies Replies::push(bool r) const {
  if (len_ >= kMaxLen) throw InvariantError("reply sequence too long");
  Replies out = *this;
  if (r) out.bits_ |= 1u << len_;
  ++out.len_;
  return out;
}

bool Replies::starts_with(const Replies& p) const {
  if (p.len_ > len_) return false;
  std::uint32_t mask = p.len_ == 0 ? 0u : (p.len_ >= 32 ? ~0u : ((1u << p.len_) - 1u));
  return (bits_ & mask) == p.bits_;
}

std::string Replies::str() const {
  std::string s;
  for (std::size_t i = 0; i < len_; ++i) s += at(i) ? 'T' : 'F';
  return s;
}

// -- ThreadTable ---------------------------------------------------------------

ThreadTable::ThreadTable(const ThreadSpec& spec) {
  for (const auto& r : spec.states()) {
    if (r.kind != ThreadRhs::Kind::Cond) continue;
    if (r.action->is_tau()) throw InvariantError("protocol threads must not contain tau");
    if (r.action->instruction().is_alt_choice())
      throw InvariantError("protocol threads use focus.method instructions only");
  }
  ThreadSpec m = minimize(spec);
  states_ = m.states();
  auto it = std::find_if(states_.begin(), states_.end(),
                         [](const ThreadRhs& r) { return r.kind == ThreadRhs::Kind::Dead; });
  if (it == states_.end()) {
    dead_ = states_.size();
    states_.push_back(ThreadRhs::dead());
  } else {
    dead_ = static_cast<std::size_t>(it - states_.begin());
  }
  for (const auto& r : states_) {
    switch (r.kind) {
      case ThreadRhs::Kind::Stop: acts_.push_back(BActiElem::stopd()); break;
      case ThreadRhs::Kind::Dead: acts_.push_back(BActiElem::deadd()); break;
      case ThreadRhs::Kind::Cond: acts_.push_back(BActiElem::basic(r.action->instruction())); break;
    }
  }
}

std::size_t ThreadTable::thrt(std::size_t q) const {
  const ThreadRhs& r = states_.at(q);
  return r.kind == ThreadRhs::Kind::Cond ? r.on_true : dead_;
}

std::size_t ThreadTable::thrf(std::size_t q) const {
  const ThreadRhs& r = states_.at(q);
  return r.kind == ThreadRhs::Kind::Cond ? r.on_false : dead_;
}

bool enablea(const BActiElem& a, const ThreadSpec& spec) {
  const ThreadRhs& r = spec.root();
  if (r.kind == ThreadRhs::Kind::Cond && r.action->is_tau()) return false;
  return first_action(spec) == a;
}

bool can_terminate(const ThreadSpec& t) {
  std::vector<bool> seen(t.size(), false);
  std::vector<std::size_t> todo{0};
  seen[0] = true;
  while (!todo.empty()) {
    std::size_t q = todo.back();
    todo.pop_back();
    const ThreadRhs& r = t.state(q);
    if (r.kind == ThreadRhs::Kind::Stop) return true;
    if (r.kind != ThreadRhs::Kind::Cond) continue;
    for (std::size_t n : {r.on_true, r.on_false})
      if (!seen[n]) {
        seen[n] = true;
        todo.push_back(n);
      }
  }
  return false;
}

// -- State updates -------------------------------------------------------------

GenState updpm(const ThreadTable& t, const GenEntry& entry, const GenState& g) {
  if (!g.pending.count(entry)) throw InvariantError("entry is not pending");
  GenState out;
  out.ack = 0;
  out.pending = g.pending;
  out.pending.erase(entry);
  if (t.act(entry.thread).is_basic()) {
    out.pending.insert({entry.replies.push(true), t.thrt(entry.thread)});
    out.pending.insert({entry.replies.push(false), t.thrf(entry.thread)});
  }
  return out;
}

GenState updcr(bool r, const GenState& g) {
  GenState out;
  out.ack = g.ack + 1;
  for (const auto& e : g.pending)
    if (!e.replies.empty() && e.replies.head() == r) out.pending.insert({e.replies.tail(), e.thread});
  return out;
}

std::set<GenEntry> select(const std::set<GenEntry>& pending) {
  std::set<GenEntry> out;
  if (pending.empty()) return out;
  std::size_t shortest = Replies::kMaxLen + 1;
  for (const auto& e : pending) shortest = std::min(shortest, e.replies.size());
  for (const auto& e : pending)
    if (e.replies.size() == shortest) out.insert(e);
  return out;
}

namespace {

std::size_t monus(std::size_t a, std::size_t b) { return a > b ? a - b : 0; }

}  // namespace

ExecState updcm(const Msg& m, const ExecState& x) {
  ExecState out = x;
  std::size_t keep = monus(x.unacked, m.ack);
  out.unacked = keep;
  out.table.insert({m.replies.tail(keep), m.instr});
  return out;
}

ExecState updpr(bool r, const ExecState& x) {
  ExecState out;
  out.unacked = x.unacked + 1;
  out.history = x.history;
  for (const auto& e : x.table)
    if (!e.replies.empty() && e.replies.head() == r) out.table.insert({e.replies.tail(), e.instr});
  return out;
}

ExecState updcm_filtered(const Msg& m, const ExecState& x) {
  std::size_t keep = monus(x.unacked, m.ack);
  // Replies the sender had not seen yet, oldest first.
  Replies unseen = x.history.tail(x.unacked - keep);
  ExecState out = x;
  out.unacked = keep;
  out.history = unseen;
  if (m.replies.starts_with(unseen)) out.table.insert({m.replies.tail(keep), m.instr});
  return out;
}

ExecState updpr_tracked(bool r, const ExecState& x) {
  ExecState out = updpr(r, x);
  out.history = x.history.push(r);
  return out;
}

bool enable(const BActiElem& a, const std::set<ExecEntry>& table) { return table.count({Replies{}, a}) != 0; }

void ProtocolConfig::validate() const {
  if (maxlen < 1) throw InvariantError("maxlen must be at least 1");
  if (maxlen + 1 > Replies::kMaxLen) throw InvariantError("maxlen too large");
  if (capacity < 1) throw InvariantError("channel capacity must be at least 1");
}

std::string Msg::str() const {
  return "<" + std::to_string(ack) + "," + (replies.empty() ? "[]" : replies.str()) + "," + instr.str() + ">";
}

// -- Simple protocol -----------------------------------------------------------

namespace {

ActionLabel request_label(const BActiElem& a) {
  return ActionLabel::snd_focus(a.instruction().focus(), a.instruction().method());
}

ActionLabel reply_label(const std::string& focus, bool r) { return ActionLabel::rcv_focus(focus, r ? "T" : "F"); }

// Generic explorer over hashable composite states.
template <typename State, typename Key, typename Succ, typename Term>
ProtocolRun explore(const State& init, Key key, Succ successors, Term terminated, std::size_t budget) {
  ProtocolRun run;
  std::unordered_map<std::string, Lts::State> ids;
  std::deque<std::pair<State, Lts::State>> todo;
  auto visit = [&](const State& s) {
    std::string k = key(s);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (ids.size() >= budget) throw BudgetExceeded(ids.size() + 1, budget);
    Lts::State id = run.system.add_state(terminated(s));
    ids.emplace(std::move(k), id);
    todo.emplace_back(s, id);
    return id;
  };
  run.system.set_root(visit(init));
  while (!todo.empty()) {
    auto [s, id] = std::move(todo.front());
    todo.pop_front();
    auto succ = successors(s, run.stats);
    if (succ.empty() && !terminated(s)) ++run.stats.deadlocks;
    for (auto& [label, next] : succ) run.system.add_transition(id, label, visit(next));
  }
  run.stats.states = run.system.num_states();
  run.stats.transitions = run.system.num_transitions();
  return run;
}

struct SimpleState {
  enum class Gen : std::uint8_t { Active, Waiting, Done };
  enum class Exec : std::uint8_t { Idle, Requested, Awaiting, Replying, Done, Stuck };
  Gen gen = Gen::Active;
  std::size_t q = 0;
  std::optional<BActiElem> msg;  // one-place instruction channel
  std::optional<bool> reply;     // one-place reply channel
  Exec exec = Exec::Idle;
  std::optional<BActiElem> current;
  bool result = false;
};

void put(std::string& k, std::size_t v) {
  k += std::to_string(v);
  k += ',';
}

void put(std::string& k, const BActiElem& a) {
  k += a.str();
  k += ',';
}

}  // namespace

ProtocolRun build_simple(const ThreadSpec& t, TermMode mode, std::size_t budget) {
  ThreadTable table(t);
  using S = SimpleState;
  auto key = [](const S& s) {
    std::string k;
    put(k, static_cast<std::size_t>(s.gen));
    put(k, s.q);
    if (s.msg) put(k, *s.msg); else k += "-,";
    put(k, s.reply ? 1 + *s.reply : 0);
    put(k, static_cast<std::size_t>(s.exec));
    if (s.current) put(k, *s.current); else k += "-,";
    put(k, s.result);
    return k;
  };
  auto terminated = [&](const S& s) {
    return mode == TermMode::Adjusted && s.gen == S::Gen::Done && s.exec == S::Exec::Done && !s.msg &&
           !s.reply;
  };
  auto successors = [&](const S& s, ProtocolStats&) {
    std::vector<std::pair<ActionLabel, S>> out;
    const ActionLabel j = ActionLabel::internal_j();
    // snd1 | rcv1: the generator hands its instruction to the channel.
    if (s.gen == S::Gen::Active && !s.msg) {
      S n = s;
      n.msg = table.act(s.q);
      n.gen = table.act(s.q).is_basic() ? S::Gen::Waiting : S::Gen::Done;
      out.emplace_back(j, n);
    }
    // snd2 | rcv2: the channel hands it to the execution unit.
    if (s.msg && s.exec == S::Exec::Idle) {
      S n = s;
      n.msg.reset();
      switch (s.msg->kind()) {
        case BActiElem::Kind::Basic:
          n.exec = S::Exec::Requested;
          n.current = s.msg;
          break;
        case BActiElem::Kind::StopD: n.exec = S::Exec::Done; break;
        case BActiElem::Kind::DeadD: n.exec = S::Exec::Stuck; break;
      }
      out.emplace_back(j, n);
    }
    if (s.exec == S::Exec::Requested) {
      S n = s;
      n.exec = S::Exec::Awaiting;
      out.emplace_back(request_label(*s.current), n);
    }
    if (s.exec == S::Exec::Awaiting) {
      for (bool r : {true, false}) {
        S n = s;
        n.exec = S::Exec::Replying;
        n.result = r;
        out.emplace_back(reply_label(s.current->instruction().focus(), r), n);
      }
    }
    // snd3 | rcv3
    if (s.exec == S::Exec::Replying && !s.reply) {
      S n = s;
      n.reply = s.result;
      n.exec = S::Exec::Idle;
      n.current.reset();
      n.result = false;
      out.emplace_back(j, n);
    }
    // snd4 | rcv4
    if (s.reply && s.gen == S::Gen::Waiting) {
      S n = s;
      n.q = *s.reply ? table.thrt(s.q) : table.thrf(s.q);
      n.gen = S::Gen::Active;
      n.reply.reset();
      out.emplace_back(j, n);
    }
    return out;
  };
  S init;
  init.q = table.root();
  return explore(init, key, successors, terminated, budget);
}

// -- Run-ahead protocol --------------------------------------------------------

ComplexSystem::ComplexSystem(const ThreadSpec& t, ProtocolConfig cfg, Variant variant)
    : table_(t), cfg_(cfg), variant_(variant) {
  cfg_.validate();
}

ComplexState ComplexSystem::initial() const {
  ComplexState s;
  s.gen.pending.insert({Replies{}, table_.root()});
  return s;
}

bool ComplexSystem::terminated(const ComplexState& s) const {
  return s.gen_mode == ComplexState::GenMode::Done && s.exec_mode == ComplexState::ExecMode::Done;
}

std::vector<ComplexMove> ComplexSystem::moves(const ComplexState& s) const {
  using K = ComplexMove::Kind;
  using GM = ComplexState::GenMode;
  using XM = ComplexState::ExecMode;
  const bool repaired = variant_ == Variant::Repaired;
  const ActionLabel j = ActionLabel::internal_j();
  std::vector<ComplexMove> out;

  if (s.gen_mode == GM::Active) {
    if (s.gen.pending.empty()) {
      ComplexState n = s;
      n.gen_mode = GM::Done;
      n.gen = GenState{};
      out.push_back({K::GenStop, j, std::move(n), std::nullopt});
    } else {
      if (s.msg_channel.size() < cfg_.capacity) {
        for (const auto& e : select(s.gen.pending)) {
          if (e.replies.size() > cfg_.maxlen) continue;
          Msg m{s.gen.ack, e.replies, table_.act(e.thread)};
          ComplexState n = s;
          n.gen = updpm(table_, e, s.gen);
          n.msg_channel.push_back(m);
          out.push_back({K::Send, j, std::move(n), m});
        }
      }
      if (!s.reply_channel.empty()) {
        ComplexState n = s;
        n.gen = updcr(s.reply_channel.front(), s.gen);
        n.reply_channel.erase(n.reply_channel.begin());
        out.push_back({K::ConsumeReply, j, std::move(n), std::nullopt});
      }
    }
  } else if (repaired && !s.reply_channel.empty()) {
    ComplexState n = s;
    n.reply_channel.erase(n.reply_channel.begin());
    out.push_back({K::Drop, j, std::move(n), std::nullopt});
  }

  // Message deliveries are accepted in the Ready and Awaiting modes.
  if (!s.msg_channel.empty()) {
    const Msg& m = s.msg_channel.front();
    if (s.exec_mode == XM::Ready || s.exec_mode == XM::Awaiting) {
      ComplexState n = s;
      n.exec = repaired ? updcm_filtered(m, s.exec) : updcm(m, s.exec);
      n.msg_channel.erase(n.msg_channel.begin());
      out.push_back({K::Deliver, j, std::move(n), m});
    } else if (repaired && s.exec_mode == XM::Done) {
      ComplexState n = s;
      n.msg_channel.erase(n.msg_channel.begin());
      out.push_back({K::Drop, j, std::move(n), m});
    }
  }

  switch (s.exec_mode) {
    case XM::Ready:
      for (const auto& e : s.exec.table) {
        if (!e.replies.empty()) continue;
        switch (e.instr.kind()) {
          case BActiElem::Kind::Basic: {
            ComplexState n = s;
            n.exec_mode = XM::Awaiting;
            n.awaiting_focus = e.instr.instruction().focus();
            out.push_back({K::Request, request_label(e.instr), std::move(n), std::nullopt});
            break;
          }
          case BActiElem::Kind::StopD: {
            ComplexState n = s;
            n.exec_mode = XM::Done;
            n.exec = ExecState{};
            out.push_back({K::ExecStop, j, std::move(n), std::nullopt});
            break;
          }
          case BActiElem::Kind::DeadD:
            break;  // a deadlock summand contributes no step
        }
      }
      break;
    case XM::Awaiting:
      for (bool r : {true, false}) {
        ComplexState n = s;
        n.exec_mode = XM::Replying;
        n.reply = r;
        out.push_back({K::Receive, reply_label(s.awaiting_focus, r), std::move(n), std::nullopt});
      }
      break;
    case XM::Replying:
      if (s.reply_channel.size() < cfg_.capacity) {
        ComplexState n = s;
        n.exec_mode = XM::Ready;
        n.awaiting_focus.clear();
        n.exec = repaired ? updpr_tracked(s.reply, s.exec) : updpr(s.reply, s.exec);
        n.reply = false;
        n.reply_channel.push_back(s.reply);
        out.push_back({K::ReturnReply, j, std::move(n), std::nullopt});
      }
      break;
    case XM::Done:
      break;
  }
  return out;
}

namespace {

// Small dense ids for the instructions met during one exploration, so that
// composite states hash as compact byte strings.
class InstrIds {
 public:
  char id(const BActiElem& a) {
    for (std::size_t i = 0; i < seen_.size(); ++i)
      if (seen_[i] == a) return static_cast<char>(i);
    seen_.push_back(a);
    return static_cast<char>(seen_.size() - 1);
  }

 private:
  std::vector<BActiElem> seen_;
};

void put_raw(std::string& k, std::uint64_t v) {
  do {
    k += static_cast<char>((v & 0x7f) | (v > 0x7f ? 0x80 : 0));
    v >>= 7;
  } while (v);
}

void put_raw(std::string& k, const Replies& r) {
  put_raw(k, r.size());
  put_raw(k, r.bits());
}

std::string complex_key(const ComplexState& s, InstrIds& ids) {
  std::string k;
  k += static_cast<char>(s.gen_mode);
  put_raw(k, s.gen.ack);
  put_raw(k, s.gen.pending.size());
  for (const auto& e : s.gen.pending) {
    put_raw(k, e.replies);
    put_raw(k, e.thread);
  }
  put_raw(k, s.msg_channel.size());
  for (const auto& m : s.msg_channel) {
    put_raw(k, m.ack);
    put_raw(k, m.replies);
    k += ids.id(m.instr);
  }
  put_raw(k, s.reply_channel.size());
  for (bool r : s.reply_channel) k += r ? 'T' : 'F';
  k += static_cast<char>(s.exec_mode);
  k += s.awaiting_focus;
  k += '\0';
  k += s.reply ? 'T' : 'F';
  put_raw(k, s.exec.unacked);
  put_raw(k, s.exec.history);
  put_raw(k, s.exec.table.size());
  for (const auto& e : s.exec.table) {
    put_raw(k, e.replies);
    k += ids.id(e.instr);
  }
  return k;
}

}  // namespace

ProtocolRun build_complex(const ThreadSpec& t, const ProtocolConfig& cfg, TermMode mode, Variant variant) {
  ComplexSystem sys(t, cfg, variant);
  auto terminated = [&](const ComplexState& s) { return mode == TermMode::Adjusted && sys.terminated(s); };
  auto successors = [&](const ComplexState& s, ProtocolStats& st) {
    for (const auto& e : s.gen.pending) st.max_pending_len = std::max(st.max_pending_len, e.replies.size());
    st.max_counter = std::max({st.max_counter, s.gen.ack, s.exec.unacked});
    std::size_t empties = 0;
    for (const auto& e : s.exec.table) empties += e.replies.empty();
    if (empties > 1) ++st.ambiguous_exec_states;
    std::vector<std::pair<ActionLabel, ComplexState>> out;
    for (auto& m : sys.moves(s)) out.emplace_back(std::move(m.label), std::move(m.next));
    return out;
  };
  InstrIds ids;
  auto key = [&](const ComplexState& s) { return complex_key(s, ids); };
  return explore(sys.initial(), key, successors, terminated, cfg.budget);
}

// -- Verification --------------------------------------------------------------

Lts observable(const ProtocolRun& run) {
  return tau_prefix(abstract(run.system, std::set<ActionLabel>{ActionLabel::internal_j()}));
}

Lts reference_process(const ThreadSpec& t) {
  ExtractOptions opts;
  opts.abstract_stp = true;
  return tau_prefix(process_extract(t, opts));
}

namespace {

VerifyResult check(const ProtocolRun& run, const ThreadSpec& t) {
  VerifyResult v;
  Lts ref = reference_process(t);
  v.reference_states = ref.num_states();
  v.stats = run.stats;
  v.equivalent = rooted_branching_bisim(observable(run), ref);
  return v;
}

}  // namespace

VerifyResult verify_simple(const ThreadSpec& t, TermMode mode, std::size_t budget) {
  return check(build_simple(t, mode, budget), t);
}

VerifyResult verify_complex(const ThreadSpec& t, const ProtocolConfig& cfg, TermMode mode, Variant variant) {
  return check(build_complex(t, cfg, mode, variant), t);
}

}  // namespace isproc
