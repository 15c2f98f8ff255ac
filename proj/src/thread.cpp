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

#include "isproc/thread.hpp"

#include <deque>
#include <map>
#include <tuple>

#include "isproc/error.hpp"
#include "text_cursor.hpp"

namespace isproc {

ThreadSpec ThreadSpec::make(const std::vector<ThreadRhs>& states, std::size_t root) {
  const std::size_t n = states.size();
  if (root >= n) throw InvariantError("thread root out of range");
  for (const auto& s : states) {
    if (s.kind != ThreadRhs::Kind::Cond) continue;
    if (!s.action) throw InvariantError("postconditional without an action");
    if (s.on_true >= n || s.on_false >= n) throw InvariantError("thread state index out of range");
  }
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> renum(n, kUnseen);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{root};
  renum[root] = 0;
  order.push_back(root);
  while (!queue.empty()) {
    std::size_t q = queue.front();
    queue.pop_front();
    if (states[q].kind != ThreadRhs::Kind::Cond) continue;
    for (std::size_t next : {states[q].on_true, states[q].on_false}) {
      if (renum[next] != kUnseen) continue;
      renum[next] = order.size();
      order.push_back(next);
      queue.push_back(next);
    }
  }
  ThreadSpec spec;
  spec.states_.reserve(order.size());
  for (std::size_t q : order) {
    ThreadRhs r = states[q];
    if (r.kind == ThreadRhs::Kind::Cond) {
      r.on_true = renum[r.on_true];
      r.on_false = renum[r.on_false];
    } else {
      r.action.reset();
      r.on_true = r.on_false = 0;
    }
    spec.states_.push_back(std::move(r));
  }
  return spec;
}

std::string ThreadSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const ThreadRhs& r = states_[i];
    out += "x" + std::to_string(i) + " = ";
    switch (r.kind) {
      case ThreadRhs::Kind::Stop: out += "S"; break;
      case ThreadRhs::Kind::Dead: out += "D"; break;
      case ThreadRhs::Kind::Cond:
        out += "<" + r.action->str() + "> x" + std::to_string(r.on_true) + " | x" +
               std::to_string(r.on_false);
        break;
    }
    out += "\n";
  }
  return out;
}

std::set<std::size_t> residuals(const ThreadSpec& spec) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < spec.size(); ++i) out.insert(i);
  return out;
}

std::vector<ThreadRhs> residual_table(const ThreadSpec& spec) { return spec.states(); }

ThreadSpec from_residual_table(const std::vector<ThreadRhs>& table, std::size_t root) {
  return ThreadSpec::make(table, root);
}

bool regular_over(const ThreadSpec& spec, const std::set<ThreadAction>& acts) {
  for (const auto& r : spec.states())
    if (r.kind == ThreadRhs::Kind::Cond && !acts.count(*r.action)) return false;
  return true;
}

ThreadSpec project(const ThreadSpec& spec, std::size_t n) {
  // State (q, d) of the approximation lives at index q * (n + 1) + d.
  const std::size_t width = n + 1;
  std::vector<ThreadRhs> out(spec.size() * width);
  for (std::size_t q = 0; q < spec.size(); ++q) {
    const ThreadRhs& r = spec.state(q);
    for (std::size_t d = 0; d <= n; ++d) {
      ThreadRhs& o = out[q * width + d];
      if (d == 0) {
        o = ThreadRhs::dead();
      } else if (r.kind == ThreadRhs::Kind::Cond) {
        o = ThreadRhs::cond(*r.action, r.on_true * width + d - 1, r.on_false * width + d - 1);
      } else {
        o = r;
      }
    }
  }
  return ThreadSpec::make(out, n);
}

ThreadSpec normalize_tau(const ThreadSpec& spec) {
  std::vector<ThreadRhs> out = spec.states();
  for (auto& r : out)
    if (r.kind == ThreadRhs::Kind::Cond && r.action->is_tau()) r.on_false = r.on_true;
  return ThreadSpec::make(out, 0);
}

ThreadSpec minimize(const ThreadSpec& spec) {
  const std::size_t n = spec.size();
  std::vector<std::size_t> block(n);
  {
    std::map<std::tuple<int, std::optional<ThreadAction>>, std::size_t> ids;
    for (std::size_t q = 0; q < n; ++q) {
      const ThreadRhs& r = spec.state(q);
      auto key = std::make_tuple(static_cast<int>(r.kind), r.action);
      block[q] = ids.emplace(key, ids.size()).first->second;
    }
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      const ThreadRhs& r = spec.state(q);
      bool cond = r.kind == ThreadRhs::Kind::Cond;
      auto key = std::make_tuple(block[q], cond ? block[r.on_true] : 0, cond ? block[r.on_false] : 0);
      next[q] = ids.emplace(key, ids.size()).first->second;
    }
    block = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  std::vector<ThreadRhs> quotient(count);
  for (std::size_t q = 0; q < n; ++q) {
    ThreadRhs r = spec.state(q);
    if (r.kind == ThreadRhs::Kind::Cond) {
      r.on_true = block[r.on_true];
      r.on_false = block[r.on_false];
    }
    quotient[block[q]] = r;
  }
  return ThreadSpec::make(quotient, block[0]);
}

bool thread_equal(const ThreadSpec& a, const ThreadSpec& b) {
  return minimize(normalize_tau(a)) == minimize(normalize_tau(b));
}

std::string BActiElem::str() const {
  switch (kind_) {
    case Kind::StopD: return "stopd";
    case Kind::DeadD: return "deadd";
    case Kind::Basic: return b_.str();
  }
  return {};
}

BActiElem first_action(const ThreadSpec& spec) {
  const ThreadRhs& r = spec.root();
  switch (r.kind) {
    case ThreadRhs::Kind::Stop: return BActiElem::stopd();
    case ThreadRhs::Kind::Dead: return BActiElem::deadd();
    case ThreadRhs::Kind::Cond:
      if (r.action->is_tau()) throw InvariantError("tau has no basic action");
      return BActiElem::basic(r.action->instruction());
  }
  throw InvariantError("unknown thread state kind");
}

ThreadSpec step_true(const ThreadSpec& spec) {
  if (spec.root().kind != ThreadRhs::Kind::Cond) return ThreadSpec::dead_spec();
  return spec.rerooted(spec.root().on_true);
}

ThreadSpec step_false(const ThreadSpec& spec) {
  if (spec.root().kind != ThreadRhs::Kind::Cond) return ThreadSpec::dead_spec();
  return spec.rerooted(spec.root().on_false);
}

// -- Parsing -------------------------------------------------------------------

namespace {

bool is_var_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_var_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_var(TextCursor& in) {
  in.skip_space();
  if (!is_var_start(in.peek())) throw in.error("expected a variable name");
  return in.take_while(is_var_char);
}

}  // namespace

ThreadAction parse_thread_action(std::string_view text) {
  if (strip_line(text) == "tau") return ThreadAction::tau();
  return ThreadAction::basic(parse_basic_instruction(text));
}

ThreadSpec parse_thread(std::string_view text) {
  struct Pending {
    ThreadRhs::Kind kind;
    std::string action;
    std::string on_true, on_false;
    std::size_t line;
  };
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  std::vector<Pending> rows;
  std::optional<std::pair<std::string, std::size_t>> root;

  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = strip_line(lines[ln]);
    if (line.empty()) continue;
    TextCursor in(line, ln + 1);
    if (line.substr(0, 5) == "root ") {
      in.advance(5);
      if (root) throw in.error("duplicate root declaration");
      root.emplace(read_var(in), ln + 1);
      in.expect_end();
      continue;
    }
    std::string lhs = read_var(in);
    in.expect('=');
    in.skip_space();
    Pending p{ThreadRhs::Kind::Dead, {}, {}, {}, ln + 1};
    if (in.peek() == '<') {
      in.advance();
      std::string act = in.take_while([](char c) { return c != '>'; });
      in.expect('>');
      p.kind = ThreadRhs::Kind::Cond;
      p.action = act;
      p.on_true = read_var(in);
      in.expect('|');
      p.on_false = read_var(in);
    } else {
      std::string word = read_var(in);
      if (word == "S") {
        p.kind = ThreadRhs::Kind::Stop;
      } else if (word == "D") {
        p.kind = ThreadRhs::Kind::Dead;
      } else {
        throw in.error("expected S, D or <action>");
      }
    }
    in.expect_end();
    if (index.count(lhs)) throw ParseError("duplicate equation for '" + lhs + "'", ln + 1);
    index[lhs] = names.size();
    names.push_back(lhs);
    rows.push_back(std::move(p));
  }
  if (rows.empty()) throw ParseError("empty thread specification");

  auto lookup = [&](const std::string& v, std::size_t line) {
    auto it = index.find(v);
    if (it == index.end()) throw ParseError("undefined variable '" + v + "'", line);
    return it->second;
  };
  std::vector<ThreadRhs> states;
  for (const auto& p : rows) {
    if (p.kind != ThreadRhs::Kind::Cond) {
      states.push_back(p.kind == ThreadRhs::Kind::Stop ? ThreadRhs::stop() : ThreadRhs::dead());
      continue;
    }
    ThreadAction a = ThreadAction::tau();
    try {
      a = parse_thread_action(p.action);
    } catch (const Error& e) {
      throw ParseError(e.what(), p.line);
    }
    states.push_back(ThreadRhs::cond(a, lookup(p.on_true, p.line), lookup(p.on_false, p.line)));
  }
  std::size_t r = root ? lookup(root->first, root->second) : 0;
  return ThreadSpec::make(states, r);
}

}  // namespace isproc
