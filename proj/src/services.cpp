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

#include "isproc/services.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "isproc/error.hpp"

namespace isproc {

std::string_view reply_str(Reply r) {
  switch (r) {
    case Reply::True: return "T";
    case Reply::False: return "F";
    case Reply::Blocked: return "B";
  }
  return "?";
}

Reply parse_reply(std::string_view s) {
  if (s == "T") return Reply::True;
  if (s == "F") return Reply::False;
  if (s == "B") return Reply::Blocked;
  throw ParseError("expected reply T, F or B, got '" + std::string(s) + "'");
}

struct Service::Machine {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> methods;
  std::map<std::pair<std::string, std::size_t>, Step> steps;
  std::size_t blocked;
};

Service Service::make(std::string name, std::vector<std::string> states,
                      std::map<std::pair<std::string, std::size_t>, Step> steps,
                      std::size_t blocked, std::size_t initial) {
  if (states.empty()) throw InvariantError("service needs at least one state");
  if (blocked >= states.size() || initial >= states.size())
    throw InvariantError("service state index out of range");
  auto m = std::make_shared<Machine>();
  m->name = std::move(name);
  m->states = std::move(states);
  m->blocked = blocked;
  std::set<std::string> meths;
  for (const auto& [key, step] : steps) {
    if (key.second >= m->states.size() || step.next >= m->states.size())
      throw InvariantError("service state index out of range");
    meths.insert(key.first);
  }
  m->methods.assign(meths.begin(), meths.end());
  m->steps = std::move(steps);

  // Blocked absorption, checked over the declared methods plus one
  // undeclared method (which always blocks).
  auto at = [&](const std::string& meth, std::size_t s) {
    auto it = m->steps.find({meth, s});
    return it == m->steps.end() ? Step{m->blocked, Reply::Blocked} : it->second;
  };
  std::vector<std::string> probe = m->methods;
  probe.emplace_back();
  for (std::size_t s = 0; s < m->states.size(); ++s)
    for (const auto& meth : probe) {
      Step st = at(meth, s);
      if (st.reply != Reply::Blocked) continue;
      for (const auto& other : probe)
        if (at(other, st.next).reply != Reply::Blocked)
          throw InvariantError("service '" + m->name + "' answers after a blocked reply (method '" +
                               meth + "' in state " + m->states[s] + ")");
    }
  return Service(std::move(m), initial);
}

Service Service::boolean_register(Reply initial) {
  // State indices follow the Reply enumeration.
  std::map<std::pair<std::string, std::size_t>, Step> steps;
  for (std::size_t s : {0u, 1u}) {
    steps[{"set:T", s}] = {0, Reply::True};
    steps[{"set:F", s}] = {1, Reply::False};
    steps[{"get", s}] = {s, static_cast<Reply>(s)};
  }
  return make("br", {"T", "F", "B"}, std::move(steps), 2, static_cast<std::size_t>(initial));
}

const std::string& Service::name() const { return m_->name; }
const std::string& Service::state_name() const { return m_->states[current_]; }
std::size_t Service::num_states() const { return m_->states.size(); }
const std::vector<std::string>& Service::methods() const { return m_->methods; }

Service::Step Service::step_at(std::string_view method, std::size_t state) const {
  auto it = m_->steps.find({std::string(method), state});
  if (it == m_->steps.end()) return {m_->blocked, Reply::Blocked};
  return it->second;
}

Service Service::with_state(std::size_t s) const {
  if (s >= m_->states.size()) throw InvariantError("service state index out of range");
  return Service(m_, s);
}

std::string Service::str() const {
  std::ostringstream out;
  out << "service " << m_->name << " states {";
  for (std::size_t i = 0; i < m_->states.size(); ++i) out << (i ? "," : "") << m_->states[i];
  out << "} initial " << m_->states[current_] << "\n";
  for (const auto& [key, step] : m_->steps)
    out << "on " << key.first << " " << m_->states[key.second] << " -> " << m_->states[step.next]
        << " reply " << reply_str(step.reply) << "\n";
  return out.str();
}

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      flush();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '{' || c == '}' || c == ',') {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

}  // namespace

Service parse_service(std::string_view text) {
  auto tok = tokenize(text);
  std::size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= tok.size()) throw ParseError("unexpected end of service description");
    return tok[i++];
  };
  auto expect = [&](std::string_view w) {
    const std::string& t = next();
    if (t != w) throw ParseError("expected '" + std::string(w) + "', got '" + t + "'");
  };

  if (tok.size() == 2 && tok[0] == "br") return Service::boolean_register(parse_reply(tok[1]));

  expect("service");
  std::string name = next();
  expect("states");
  expect("{");
  std::vector<std::string> states;
  std::map<std::string, std::size_t> index;
  for (;;) {
    std::string s = next();
    if (s == "}" || s == ",") throw ParseError("expected a state name");
    if (index.count(s)) throw ParseError("duplicate state '" + s + "'");
    index[s] = states.size();
    states.push_back(s);
    const std::string& sep = next();
    if (sep == "}") break;
    if (sep != ",") throw ParseError("expected ',' or '}' in state list");
  }
  expect("initial");
  auto state_of = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw ParseError("unknown state '" + s + "'");
    return it->second;
  };
  std::size_t initial = state_of(next());

  std::map<std::pair<std::string, std::size_t>, Service::Step> steps;
  while (i < tok.size()) {
    expect("on");
    std::string meth = next();
    if (!is_identifier(meth)) throw ParseError("malformed method '" + meth + "'");
    std::size_t from = state_of(next());
    expect("->");
    std::size_t to = state_of(next());
    expect("reply");
    Reply r = parse_reply(next());
    if (!steps.emplace(std::make_pair(meth, from), Service::Step{to, r}).second)
      throw ParseError("duplicate transition for method '" + meth + "'");
  }
  // The blocked sink absorbs every method. A declared state named "blocked"
  // serves as the sink, which keeps printed services reparseable.
  std::size_t blocked = states.size();
  if (auto it = index.find("blocked"); it != index.end()) {
    blocked = it->second;
  } else {
    states.push_back("blocked");
  }
  try {
    return Service::make(std::move(name), std::move(states), std::move(steps), blocked, initial);
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

ThreadSpec use(const ThreadSpec& spec, const std::string& focus, const Service& h) {
  if (focus.empty()) throw InvariantError("use requires a nonempty focus");
  // Product states (thread state, service state), discovered on demand.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  std::vector<ThreadRhs> out;
  auto intern = [&](std::size_t q, std::size_t s) {
    auto [it, fresh] = index.emplace(std::make_pair(q, s), out.size());
    if (fresh) {
      out.emplace_back();
      todo.emplace_back(q, s);
    }
    return it->second;
  };
  std::size_t dead = std::numeric_limits<std::size_t>::max();
  auto dead_state = [&] {
    if (dead == std::numeric_limits<std::size_t>::max()) {
      dead = out.size();
      out.push_back(ThreadRhs::dead());
    }
    return dead;
  };

  intern(0, h.state());
  while (!todo.empty()) {
    auto [q, s] = todo.back();
    todo.pop_back();
    const std::size_t self = index.at({q, s});
    const ThreadRhs& r = spec.state(q);
    if (r.kind != ThreadRhs::Kind::Cond) {
      out[self] = r;
      continue;
    }
    const ThreadAction& a = *r.action;
    bool handled = !a.is_tau() && !a.instruction().is_alt_choice() && a.instruction().focus() == focus;
    if (!handled) {
      std::size_t t = intern(r.on_true, s);
      std::size_t f = intern(r.on_false, s);
      out[self] = ThreadRhs::cond(a, t, f);
      continue;
    }
    Service::Step st = h.step_at(a.instruction().method(), s);
    std::size_t next;
    switch (st.reply) {
      case Reply::True: next = intern(r.on_true, st.next); break;
      case Reply::False: next = intern(r.on_false, st.next); break;
      default: next = dead_state(); break;
    }
    out[self] = ThreadRhs::cond(ThreadAction::tau(), next, next);
  }
  return ThreadSpec::make(out, 0);
}

ThreadSpec use_chain(const ThreadSpec& spec, const std::vector<std::pair<std::string, Service>>& chain) {
  std::set<std::string> seen;
  for (const auto& [f, h] : chain)
    if (!seen.insert(f).second) throw InvariantError("duplicate focus '" + f + "' in use chain");
  ThreadSpec out = spec;
  for (const auto& [f, h] : chain) out = use(out, f, h);
  return out;
}

}  // namespace isproc
