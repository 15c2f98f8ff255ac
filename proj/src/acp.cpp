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

#include "isproc/acp.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "isproc/error.hpp"
#include "text_cursor.hpp"

namespace isproc {

// -- Labels --------------------------------------------------------------------

std::string ActionLabel::str() const {
  switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::I: return "i";
    case Kind::J: return "j";
    case Kind::Stp: return "stp";
    case Kind::StpStar: return "stp*";
    case Kind::Snd: return "snd[" + where + "](" + payload + ")";
    case Kind::Rcv: return "rcv[" + where + "](" + payload + ")";
    case Kind::Atomic: return payload;
    case Kind::SndFocus: return "snd{" + where + "}(" + payload + ")";
    case Kind::RcvFocus: return "rcv{" + where + "}(" + payload + ")";
    case Kind::SndServ: return "snds(" + payload + ")";
    case Kind::RcvServ: return "rcvs(" + payload + ")";
  }
  return "?";
}

ActionLabel parse_label(std::string_view text) {
  std::string_view s = strip_line(text);
  if (s.empty()) throw ParseError("empty action label");
  if (s == "tau") return ActionLabel::tau();
  if (s == "i") return ActionLabel::internal_i();
  if (s == "j") return ActionLabel::internal_j();
  if (s == "stp") return ActionLabel::stp();
  if (s == "stp*") return ActionLabel::stp_star();

  // The datum runs from the first '(' after the prefix to the final ')'.
  auto datum = [&](std::size_t open) {
    if (open >= s.size() || s[open] != '(' || s.back() != ')')
      throw ParseError("malformed action label '" + std::string(s) + "'");
    std::string d(s.substr(open + 1, s.size() - open - 2));
    if (d.empty()) throw ParseError("empty datum in action label '" + std::string(s) + "'");
    return d;
  };
  auto bracketed = [&](char open, char close) -> std::pair<std::string, std::size_t> {
    std::size_t e = s.find(close, 4);
    if (e == std::string_view::npos) throw ParseError("malformed action label '" + std::string(s) + "'");
    (void)open;
    return {std::string(s.substr(4, e - 4)), e + 1};
  };
  bool snd = s.substr(0, 3) == "snd";
  bool rcv = s.substr(0, 3) == "rcv";
  if ((snd || rcv) && s.size() > 3) {
    char k = s[3];
    if (k == '[') {
      auto [c, next] = bracketed('[', ']');
      if (c.empty() || !std::all_of(c.begin(), c.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw ParseError("channel must be a number in '" + std::string(s) + "'");
      std::string d = datum(next);
      return snd ? ActionLabel{ActionLabel::Kind::Snd, c, d} : ActionLabel{ActionLabel::Kind::Rcv, c, d};
    }
    if (k == '{') {
      auto [f, next] = bracketed('{', '}');
      std::string d = datum(next);
      return snd ? ActionLabel::snd_focus(f, d) : ActionLabel::rcv_focus(f, d);
    }
    if (k == 's' && s.size() > 4 && s[4] == '(') {
      std::string d = datum(4);
      return snd ? ActionLabel::snd_serv(d) : ActionLabel::rcv_serv(d);
    }
  }
  if (!is_identifier(s)) throw ParseError("malformed action label '" + std::string(s) + "'");
  return ActionLabel::atomic(std::string(s));
}

// -- Communication -------------------------------------------------------------

CommFn CommFn::none() {
  return CommFn([](const ActionLabel&, const ActionLabel&) -> std::optional<ActionLabel> { return std::nullopt; });
}

CommFn CommFn::channels() {
  return CommFn([](const ActionLabel& a, const ActionLabel& b) -> std::optional<ActionLabel> {
    if (a.kind == ActionLabel::Kind::Snd && b.kind == ActionLabel::Kind::Rcv && a.where == b.where &&
        a.payload == b.payload)
      return ActionLabel::internal_j();
    return std::nullopt;
  });
}

CommFn CommFn::service_use() {
  return CommFn([](const ActionLabel& a, const ActionLabel& b) -> std::optional<ActionLabel> {
    if (a.kind == ActionLabel::Kind::SndFocus && b.kind == ActionLabel::Kind::RcvFocus &&
        a.where == b.where && a.payload == b.payload)
      return ActionLabel::internal_i();
    if (a.kind == ActionLabel::Kind::Stp && b.kind == ActionLabel::Kind::Stp) return ActionLabel::stp_star();
    return std::nullopt;
  });
}

std::optional<ActionLabel> CommFn::operator()(const ActionLabel& a, const ActionLabel& b) const {
  if (a.is_tau() || b.is_tau()) return std::nullopt;
  auto r = fn_(a, b);
  if (!r) r = fn_(b, a);
  if (r && r->is_tau()) throw InvariantError("communication may not yield tau");
  return r;
}

// -- Lts -----------------------------------------------------------------------

Lts::Lts() { intern(ActionLabel::tau()); }

Lts::State Lts::add_state(bool terminating) {
  out_.emplace_back();
  terminating_.push_back(terminating ? 1 : 0);
  return static_cast<State>(out_.size() - 1);
}

Lts::LabelId Lts::intern(const ActionLabel& a) {
  auto [it, fresh] = label_ids_.emplace(a, static_cast<LabelId>(labels_.size()));
  if (fresh) labels_.push_back(a);
  return it->second;
}

void Lts::add_transition_id(State from, LabelId a, State to) {
  if (from >= out_.size() || to >= out_.size() || a >= labels_.size())
    throw InvariantError("transition refers to an unknown state or label");
  out_[from].push_back({a, to});
}

std::size_t Lts::num_transitions() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

std::optional<Lts::LabelId> Lts::find_label(const ActionLabel& a) const {
  auto it = label_ids_.find(a);
  if (it == label_ids_.end()) return std::nullopt;
  return it->second;
}

Lts Lts::trimmed() const {
  Lts r;
  r.labels_ = labels_;
  r.label_ids_ = label_ids_;
  if (out_.empty()) {
    r.add_state();
    return r;
  }
  constexpr State kUnseen = static_cast<State>(-1);
  std::vector<State> renum(out_.size(), kUnseen);
  std::vector<State> order{root_};
  renum[root_] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    // Visit successors in a stable order so the numbering is deterministic.
    std::vector<Edge> es = out_[order[i]];
    std::sort(es.begin(), es.end());
    for (const Edge& e : es)
      if (renum[e.target] == kUnseen) {
        renum[e.target] = static_cast<State>(order.size());
        order.push_back(e.target);
      }
  }
  for (State s : order) r.add_state(terminating(s));
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto& dst = r.out_[i];
    for (const Edge& e : out_[order[i]]) dst.push_back({e.label, renum[e.target]});
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
  }
  r.root_ = 0;
  return r;
}

// -- Linear specifications -----------------------------------------------------

LinearProcSpec::LinearProcSpec(std::vector<Equation> eqs) : eqs_(std::move(eqs)) {
  if (eqs_.empty()) throw InvariantError("linear specification needs an equation");
  std::set<std::string> vars;
  for (const auto& e : eqs_)
    if (!vars.insert(e.var).second) throw InvariantError("duplicate equation for '" + e.var + "'");
  for (const auto& e : eqs_)
    for (const auto& s : e.summands)
      if (s.kind == Summand::Kind::Step && !vars.count(s.target))
        throw InvariantError("undefined variable '" + s.target + "'");
}

std::string LinearProcSpec::str() const {
  std::string out;
  for (const auto& e : eqs_) {
    out += e.var + " = ";
    if (e.summands.empty()) out += "0";
    for (std::size_t i = 0; i < e.summands.size(); ++i) {
      if (i) out += " + ";
      const Summand& s = e.summands[i];
      switch (s.kind) {
        case Summand::Kind::Step: out += s.label.str() + "." + s.target; break;
        case Summand::Kind::Only: out += s.label.str(); break;
        case Summand::Kind::Deadlock: out += "0"; break;
      }
    }
    out += "\n";
  }
  return out;
}

namespace {

bool is_var_name(std::string_view v) {
  if (v.empty() || !std::isupper(static_cast<unsigned char>(v.front()))) return false;
  return std::all_of(v.begin(), v.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Splits at `sep` occurrences outside brackets.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{' || c == '<') ++depth;
    if (c == ')' || c == ']' || c == '}' || c == '>') --depth;
    if (c == sep && depth == 0) {
      out.push_back(s.substr(b, i - b));
      b = i + 1;
    }
  }
  out.push_back(s.substr(b));
  return out;
}

}  // namespace

LinearProcSpec parse_linear(std::string_view text) {
  std::vector<LinearProcSpec::Equation> eqs;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = strip_line(lines[ln]);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected '='", ln + 1);
    std::string_view var = strip_line(line.substr(0, eq));
    if (!is_var_name(var)) throw ParseError("malformed variable '" + std::string(var) + "'", ln + 1);
    LinearProcSpec::Equation e{std::string(var), {}};
    for (std::string_view item : split_top(line.substr(eq + 1), '+')) {
      item = strip_line(item);
      if (item.empty()) throw ParseError("empty summand", ln + 1);
      if (item == "0") {
        e.summands.push_back(Summand::deadlock());
        continue;
      }
      try {
        auto parts = split_top(item, '.');
        std::string_view last = strip_line(parts.back());
        if (parts.size() > 1 && is_var_name(last)) {
          std::string_view act = item.substr(0, item.size() - parts.back().size() - 1);
          e.summands.push_back(Summand::step(parse_label(act), std::string(last)));
        } else {
          e.summands.push_back(Summand::only(parse_label(item)));
        }
      } catch (const ParseError& err) {
        throw ParseError(err.what(), ln + 1);
      }
    }
    eqs.push_back(std::move(e));
  }
  if (eqs.empty()) throw ParseError("empty linear specification");
  try {
    return LinearProcSpec(std::move(eqs));
  } catch (const InvariantError& err) {
    throw ParseError(err.what());
  }
}

Lts lts_of_linear(const LinearProcSpec& spec) {
  Lts l;
  std::map<std::string, Lts::State> state;
  for (const auto& e : spec.equations()) state[e.var] = l.add_state();
  Lts::State done = l.add_state(true);
  for (const auto& e : spec.equations())
    for (const auto& s : e.summands) {
      if (s.kind == Summand::Kind::Step) l.add_transition(state[e.var], s.label, state[s.target]);
      if (s.kind == Summand::Kind::Only) l.add_transition(state[e.var], s.label, done);
    }
  l.set_root(state[spec.equations().front().var]);
  return l.trimmed();
}

// -- Operators -----------------------------------------------------------------

Lts merge(const Lts& a, const Lts& b, const CommFn& gamma, std::size_t budget) {
  Lts r;
  std::vector<Lts::LabelId> la(a.num_labels()), lb(b.num_labels());
  for (Lts::LabelId i = 0; i < a.num_labels(); ++i) la[i] = r.intern(a.label(i));
  for (Lts::LabelId i = 0; i < b.num_labels(); ++i) lb[i] = r.intern(b.label(i));
  std::map<std::pair<Lts::LabelId, Lts::LabelId>, std::optional<Lts::LabelId>> comm;
  auto communicate = [&](Lts::LabelId x, Lts::LabelId y) {
    auto [it, fresh] = comm.try_emplace({x, y});
    if (fresh) {
      auto c = gamma(a.label(x), b.label(y));
      if (c) it->second = r.intern(*c);
    }
    return it->second;
  };

  std::unordered_map<std::uint64_t, Lts::State> index;
  std::deque<std::pair<Lts::State, Lts::State>> todo;
  auto visit = [&](Lts::State x, Lts::State y) {
    std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | y;
    auto [it, fresh] = index.emplace(key, 0);
    if (fresh) {
      if (index.size() > budget) throw BudgetExceeded(index.size(), budget);
      it->second = r.add_state(a.terminating(x) && b.terminating(y));
      todo.emplace_back(x, y);
    }
    return it->second;
  };
  r.set_root(visit(a.root(), b.root()));
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    Lts::State self = index.at((static_cast<std::uint64_t>(x) << 32) | y);
    for (const auto& e : a.out(x)) r.add_transition_id(self, la[e.label], visit(e.target, y));
    for (const auto& e : b.out(y)) r.add_transition_id(self, lb[e.label], visit(x, e.target));
    for (const auto& ea : a.out(x))
      for (const auto& eb : b.out(y))
        if (auto c = communicate(ea.label, eb.label)) r.add_transition_id(self, *c, visit(ea.target, eb.target));
  }
  return r.trimmed();
}

namespace {

// Copies `l` with every label id passed through `relabel`; a nullopt result
// drops the transition.
template <typename F>
Lts relabelled(const Lts& l, F relabel) {
  Lts r;
  std::vector<std::optional<Lts::LabelId>> map(l.num_labels());
  for (Lts::LabelId i = 0; i < l.num_labels(); ++i) {
    auto a = relabel(l.label(i));
    if (a) map[i] = r.intern(*a);
  }
  for (Lts::State s = 0; s < l.num_states(); ++s) r.add_state(l.terminating(s));
  for (Lts::State s = 0; s < l.num_states(); ++s)
    for (const auto& e : l.out(s))
      if (map[e.label]) r.add_transition_id(s, *map[e.label], e.target);
  r.set_root(l.root());
  return r.trimmed();
}

}  // namespace

Lts encapsulate(const Lts& l, const LabelPred& blocked) {
  if (blocked(ActionLabel::tau())) throw InvariantError("tau cannot be encapsulated");
  return relabelled(l, [&](const ActionLabel& a) -> std::optional<ActionLabel> {
    if (blocked(a)) return std::nullopt;
    return a;
  });
}

Lts encapsulate(const Lts& l, const std::set<ActionLabel>& blocked) {
  return encapsulate(l, [&](const ActionLabel& a) { return blocked.count(a) > 0; });
}

Lts abstract(const Lts& l, const LabelPred& hidden) {
  return relabelled(l, [&](const ActionLabel& a) -> std::optional<ActionLabel> {
    return hidden(a) ? ActionLabel::tau() : a;
  });
}

Lts abstract(const Lts& l, const std::set<ActionLabel>& hidden) {
  return abstract(l, [&](const ActionLabel& a) { return hidden.count(a) > 0; });
}

Lts rename(const Lts& l, const LabelMap& h) {
  if (!h(ActionLabel::tau()).is_tau()) throw InvariantError("renaming must fix tau");
  return relabelled(l, [&](const ActionLabel& a) -> std::optional<ActionLabel> {
    ActionLabel b = h(a);
    if (!a.is_tau() && b.is_tau()) throw InvariantError("renaming may not produce tau");
    return b;
  });
}

Lts rename(const Lts& l, const std::map<ActionLabel, ActionLabel>& h) {
  return rename(l, [&](const ActionLabel& a) {
    auto it = h.find(a);
    return it == h.end() ? a : it->second;
  });
}

Lts tau_prefix(const Lts& l) {
  Lts r = l;
  Lts::State fresh = r.add_state();
  r.add_transition_id(fresh, Lts::kTau, l.root());
  r.set_root(fresh);
  return r.trimmed();
}

Lts process_extract(const ThreadSpec& spec, ExtractOptions opts) {
  Lts l;
  std::vector<Lts::State> node;
  for (std::size_t q = 0; q < spec.size(); ++q) node.push_back(l.add_state());
  std::optional<Lts::State> done, stuck;
  auto done_state = [&] { return done ? *done : *(done = l.add_state(true)); };
  auto stuck_state = [&] { return stuck ? *stuck : *(stuck = l.add_state()); };

  for (std::size_t q = 0; q < spec.size(); ++q) {
    const ThreadRhs& r = spec.state(q);
    switch (r.kind) {
      case ThreadRhs::Kind::Stop:
        l.add_transition(node[q], opts.abstract_stp ? ActionLabel::tau() : ActionLabel::stp(), done_state());
        break;
      case ThreadRhs::Kind::Dead:
        break;
      case ThreadRhs::Kind::Cond: {
        const ThreadAction& a = *r.action;
        if (a.is_tau()) {
          Lts::State mid = l.add_state();
          l.add_transition(node[q], ActionLabel::internal_i(), mid);
          l.add_transition(mid, ActionLabel::internal_i(), node[r.on_true]);
        } else if (a.instruction().is_alt_choice()) {
          l.add_transition(node[q], ActionLabel::atomic(a.instruction().first_choice()), node[r.on_true]);
          l.add_transition(node[q], ActionLabel::atomic(a.instruction().second_choice()), node[r.on_false]);
        } else {
          const std::string& f = a.instruction().focus();
          Lts::State mid = l.add_state();
          l.add_transition(node[q], ActionLabel::snd_focus(f, a.instruction().method()), mid);
          l.add_transition(mid, ActionLabel::rcv_focus(f, "T"), node[r.on_true]);
          l.add_transition(mid, ActionLabel::rcv_focus(f, "F"), node[r.on_false]);
          if (opts.service_aware) l.add_transition(mid, ActionLabel::rcv_focus(f, "B"), stuck_state());
        }
        break;
      }
    }
  }
  l.set_root(node[0]);
  return l.trimmed();
}

Lts use_process(const Lts& t, const std::string& focus, const Service& h) {
  // Methods the thread may request on this focus, plus those the service
  // knows about.
  std::set<std::string> methods(h.methods().begin(), h.methods().end());
  for (Lts::LabelId i = 0; i < t.num_labels(); ++i) {
    const ActionLabel& a = t.label(i);
    if (a.kind == ActionLabel::Kind::SndFocus && a.where == focus) methods.insert(a.payload);
  }

  // The service as a process over its reachable states.
  Lts serv;
  std::map<std::size_t, Lts::State> at;
  std::deque<std::size_t> todo;
  Lts::State done = serv.add_state(true);
  auto visit = [&](std::size_t s) {
    auto [it, fresh] = at.try_emplace(s, 0);
    if (fresh) {
      it->second = serv.add_state();
      todo.push_back(s);
    }
    return it->second;
  };
  serv.set_root(visit(h.state()));
  while (!todo.empty()) {
    std::size_t s = todo.front();
    todo.pop_front();
    Lts::State x = at.at(s);
    serv.add_transition(x, ActionLabel::stp(), done);
    for (const auto& m : methods) {
      Service::Step st = h.step_at(m, s);
      Lts::State mid = serv.add_state();
      serv.add_transition(x, ActionLabel::rcv_serv(m), mid);
      Lts::State next = visit(st.next);
      serv.add_transition(mid, ActionLabel::snd_serv(std::string(reply_str(st.reply))), next);
    }
  }

  Lts renamed = rename(serv, [&](const ActionLabel& a) {
    if (a.kind == ActionLabel::Kind::SndServ) return ActionLabel::snd_focus(focus, a.payload);
    if (a.kind == ActionLabel::Kind::RcvServ) return ActionLabel::rcv_focus(focus, a.payload);
    return a;
  });
  Lts composed = merge(t, renamed, CommFn::service_use());
  Lts closed = encapsulate(composed, [&](const ActionLabel& a) {
    return ((a.kind == ActionLabel::Kind::SndFocus || a.kind == ActionLabel::Kind::RcvFocus) && a.where == focus) ||
           a.kind == ActionLabel::Kind::Stp;
  });
  return rename(closed, std::map<ActionLabel, ActionLabel>{{ActionLabel::stp_star(), ActionLabel::stp()}});
}

Lts project_lts(const Lts& l, std::size_t n) {
  Lts r;
  for (Lts::LabelId i = 0; i < l.num_labels(); ++i) r.intern(l.label(i));
  std::unordered_map<std::uint64_t, Lts::State> index;
  std::deque<std::pair<Lts::State, std::size_t>> todo;
  auto visit = [&](Lts::State s, std::size_t d) {
    std::uint64_t key = static_cast<std::uint64_t>(s) * (n + 1) + d;
    auto [it, fresh] = index.emplace(key, 0);
    if (fresh) {
      it->second = r.add_state(l.terminating(s));
      todo.emplace_back(s, d);
    }
    return it->second;
  };
  r.set_root(visit(l.root(), n));
  while (!todo.empty()) {
    auto [s, d] = todo.front();
    todo.pop_front();
    Lts::State self = index.at(static_cast<std::uint64_t>(s) * (n + 1) + d);
    for (const auto& e : l.out(s)) {
      if (e.label == Lts::kTau) {
        r.add_transition_id(self, e.label, visit(e.target, d));
      } else if (d > 0) {
        r.add_transition_id(self, e.label, visit(e.target, d - 1));
      }
    }
  }
  return r.trimmed();
}

// -- Bisimulation --------------------------------------------------------------

namespace {

constexpr std::uint64_t kTermMark = ~std::uint64_t{0};

struct Graph {
  std::vector<std::vector<Lts::Edge>> out;
  std::vector<char> term;
  std::size_t size() const { return out.size(); }
};

// Both systems side by side with a shared label numbering (tau stays 0).
// States of `b` are shifted by a.num_states().
Graph disjoint_union(const Lts& a, const Lts& b) {
  std::map<ActionLabel, Lts::LabelId> ids{{ActionLabel::tau(), 0}};
  auto id_of = [&](const ActionLabel& x) {
    return ids.emplace(x, static_cast<Lts::LabelId>(ids.size())).first->second;
  };
  Graph g;
  for (const Lts* l : {&a, &b}) {
    const auto offset = static_cast<Lts::State>(g.out.size());
    std::vector<Lts::LabelId> map(l->num_labels());
    for (Lts::LabelId i = 0; i < l->num_labels(); ++i) map[i] = id_of(l->label(i));
    for (Lts::State s = 0; s < l->num_states(); ++s) {
      std::vector<Lts::Edge> es;
      for (const auto& e : l->out(s)) es.push_back({map[e.label], e.target + offset});
      g.out.push_back(std::move(es));
      g.term.push_back(l->terminating(s));
    }
  }
  return g;
}

Graph single(const Lts& l) {
  Graph g;
  for (Lts::State s = 0; s < l.num_states(); ++s) {
    g.out.push_back(l.out(s));
    g.term.push_back(l.terminating(s));
  }
  return g;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Relabels blocks by signature; returns the number of blocks.
std::size_t renumber(std::vector<std::uint32_t>& block, std::vector<std::vector<std::uint64_t>>& sig) {
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, VecHash> ids;
  for (std::size_t s = 0; s < block.size(); ++s) {
    sig[s].push_back(block[s]);  // keeps the new partition a refinement
    block[s] = ids.emplace(std::move(sig[s]), static_cast<std::uint32_t>(ids.size())).first->second;
  }
  return ids.size();
}

std::vector<std::uint32_t> strong_classes(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> block(n, 0);
  std::size_t count = 1;
  for (;;) {
    std::vector<std::vector<std::uint64_t>> sig(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (const auto& e : g.out[s]) sig[s].push_back((std::uint64_t{e.label} << 32) | block[e.target]);
      if (g.term[s]) sig[s].push_back(kTermMark);
      std::sort(sig[s].begin(), sig[s].end());
      sig[s].erase(std::unique(sig[s].begin(), sig[s].end()), sig[s].end());
    }
    std::size_t next = renumber(block, sig);
    if (next == count) return block;
    count = next;
  }
}

// Strongly connected components of the tau-subgraph (iterative Tarjan).
// Components are numbered so that every tau-successor component of c has an
// index no greater than c.
std::vector<std::uint32_t> tau_components(const Graph& g, std::size_t& count) {
  const std::size_t n = g.size();
  constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::uint32_t next_index = 0;
  count = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& es = g.out[v];
      bool descended = false;
      while (pos < es.size()) {
        const auto& e = es[pos++];
        if (e.label != Lts::kTau) continue;
        std::uint32_t w = e.target;
        if (index[w] == kNone) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      std::uint32_t done = v;
      if (low[done] == index[done]) {
        for (;;) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = static_cast<std::uint32_t>(count);
          if (w == done) break;
        }
        ++count;
      }
      call.pop_back();
      if (!call.empty()) {
        std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

// Divergence-insensitive branching bisimilarity classes, by signature
// refinement over the tau-acyclic graph of components.
std::vector<std::uint32_t> branching_classes(const Graph& g) {
  std::size_t nc = 0;
  std::vector<std::uint32_t> comp = tau_components(g, nc);
  std::vector<std::vector<Lts::Edge>> cout(nc);
  std::vector<char> cterm(nc, 0);
  for (std::size_t s = 0; s < g.size(); ++s) {
    std::uint32_t c = comp[s];
    if (g.term[s]) cterm[c] = 1;
    for (const auto& e : g.out[s]) {
      if (e.label == Lts::kTau && comp[e.target] == c) continue;
      cout[c].push_back({e.label, comp[e.target]});
    }
  }
  for (auto& es : cout) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }

  std::vector<std::uint32_t> block(nc, 0);
  std::size_t count = 1;
  for (;;) {
    std::vector<std::vector<std::uint64_t>> sig(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      auto& s = sig[c];
      for (const auto& e : cout[c]) {
        if (e.label == Lts::kTau && block[e.target] == block[c]) {
          s.insert(s.end(), sig[e.target].begin(), sig[e.target].end());
        } else {
          s.push_back((std::uint64_t{e.label} << 32) | block[e.target]);
        }
      }
      if (cterm[c]) s.push_back(kTermMark);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    // renumber() consumes the signatures, so it runs after every component
    // has read its inert successors.
    std::size_t next = renumber(block, sig);
    if (next == count) break;
    count = next;
  }
  std::vector<std::uint32_t> out(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) out[s] = block[comp[s]];
  return out;
}

}  // namespace

bool strong_bisim(const Lts& a, const Lts& b) {
  Graph g = disjoint_union(a, b);
  auto cls = strong_classes(g);
  return cls[a.root()] == cls[a.num_states() + b.root()];
}

bool branching_bisim(const Lts& a, const Lts& b) {
  Graph g = disjoint_union(a, b);
  auto cls = branching_classes(g);
  return cls[a.root()] == cls[a.num_states() + b.root()];
}

bool rooted_branching_bisim(const Lts& a, const Lts& b) {
  Graph g = disjoint_union(a, b);
  auto cls = branching_classes(g);
  const std::size_t ra = a.root();
  const std::size_t rb = a.num_states() + b.root();
  if (g.term[ra] != g.term[rb]) return false;
  auto transfer = [&](std::size_t r) {
    std::set<std::pair<Lts::LabelId, std::uint32_t>> out;
    for (const auto& e : g.out[r]) out.emplace(e.label, cls[e.target]);
    return out;
  };
  return transfer(ra) == transfer(rb);
}

Lts branching_quotient(const Lts& l) {
  Graph g = single(l);
  auto cls = branching_classes(g);
  std::uint32_t nb = 0;
  for (auto c : cls) nb = std::max(nb, c + 1);
  Lts r;
  for (Lts::LabelId i = 0; i < l.num_labels(); ++i) r.intern(l.label(i));
  for (std::uint32_t b = 0; b < nb; ++b) r.add_state();
  for (Lts::State s = 0; s < l.num_states(); ++s) {
    if (l.terminating(s)) r.set_terminating(cls[s], true);
    for (const auto& e : l.out(s)) {
      if (e.label == Lts::kTau && cls[e.target] == cls[s]) continue;
      r.add_transition_id(cls[s], e.label, cls[e.target]);
    }
  }
  r.set_root(cls[l.root()]);
  return r.trimmed();
}

std::string export_dot(const Lts& l) {
  Lts t = l.trimmed();
  std::ostringstream out;
  out << "digraph lts {\n";
  for (Lts::State s = 0; s < t.num_states(); ++s)
    out << "  s" << s << " [shape=" << (t.terminating(s) ? "doublecircle" : "circle") << "];\n";
  for (Lts::State s = 0; s < t.num_states(); ++s) {
    std::vector<std::pair<std::string, Lts::State>> es;
    for (const auto& e : t.out(s)) es.emplace_back(t.label(e.label).str(), e.target);
    std::sort(es.begin(), es.end());
    for (const auto& [name, target] : es) {
      std::string esc;
      for (char c : name) {
        if (c == '"' || c == '\\') esc += '\\';
        esc += c;
      }
      out << "  s" << s << " -> s" << target << " [label=\"" << esc << "\"";
      if (name == "tau") out << ", style=dashed";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace isproc
