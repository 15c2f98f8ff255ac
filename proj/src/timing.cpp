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

#include "isproc/timing.hpp"

#include <deque>
#include <numeric>
#include <random>
#include <sstream>

#include "isproc/error.hpp"

namespace isproc {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvariantError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

ThreadSpec straight_line(std::size_t n) {
  std::vector<ThreadRhs> states;
  for (std::size_t i = 0; i < n; ++i)
    states.push_back(ThreadRhs::cond(ThreadAction::basic(BasicInstruction::action("a")), i + 1, i + 1));
  states.push_back(ThreadRhs::stop());
  return ThreadSpec::make(states, 0);
}

namespace {

class ReplySource {
 public:
  explicit ReplySource(const ReplyPolicy& p) : policy_(p), rng_(p.seed.value_or(0)) {}
  bool next() {
    if (!policy_.fixed.empty()) return policy_.fixed[i_++ % policy_.fixed.size()];
    if (!policy_.seed) return true;
    return std::bernoulli_distribution(0.5)(rng_);
  }

 private:
  const ReplyPolicy& policy_;
  std::mt19937_64 rng_;
  std::size_t i_ = 0;
};

}  // namespace

Metrics simulate_timed(const ThreadSpec& t, const SimOptions& opts) {
  if (opts.timing.exec == 0) throw InvariantError("execution time must be positive");
  if (opts.maxlen + 1 > Replies::kMaxLen) throw InvariantError("maxlen too large");
  const ThreadTable table(t);
  const std::uint64_t E = opts.timing.exec;
  const std::uint64_t L = opts.timing.latency;
  // Longest reply sequence the generator may attach to a message.
  const std::size_t reach = opts.protocol == TimedProtocol::Simple ? 0 : opts.maxlen;

  Metrics m;
  m.protocol = opts.protocol;
  m.maxlen = opts.maxlen;
  m.timing = opts.timing;

  ReplySource source(opts.replies);
  GenState gen;
  gen.pending.insert({Replies{}, table.root()});
  bool gen_done = false;
  ExecState exec;
  std::deque<std::pair<std::uint64_t, Msg>> msgs;
  std::deque<std::pair<std::uint64_t, bool>> replies;
  std::optional<std::uint64_t> busy_until;
  bool current_reply = false;
  bool exec_stopped = false;

  std::uint64_t now = 0;
  for (;;) {
    bool changed = true;
    while (changed && !exec_stopped) {
      changed = false;
      if (busy_until && *busy_until == now) {
        exec = updpr_tracked(current_reply, exec);
        replies.emplace_back(now + L, current_reply);
        busy_until.reset();
        changed = true;
      }
      while (!replies.empty() && replies.front().first <= now) {
        if (!gen_done) gen = updcr(replies.front().second, gen);
        replies.pop_front();
        changed = true;
      }
      while (!gen_done) {
        if (gen.pending.empty()) {
          gen_done = true;
          break;
        }
        std::vector<GenEntry> ready;
        for (const auto& e : select(gen.pending))
          if (e.replies.size() <= reach) ready.push_back(e);
        if (ready.empty()) break;
        for (const auto& e : ready) {
          msgs.emplace_back(now + L, Msg{gen.ack, e.replies, table.act(e.thread)});
          gen = updpm(table, e, gen);
          ++m.messages;
        }
        changed = true;
      }
      while (!msgs.empty() && msgs.front().first <= now) {
        exec = updcm_filtered(msgs.front().second, exec);
        msgs.pop_front();
        changed = true;
      }
      if (!busy_until) {
        for (const auto& e : exec.table) {
          if (!e.replies.empty()) continue;
          if (e.instr.is_basic()) {
            busy_until = now + E;
            current_reply = source.next();
            m.starts.push_back(now);
            changed = true;
          } else {
            m.terminated = e.instr.kind() == BActiElem::Kind::StopD;
            exec_stopped = true;
          }
          break;
        }
      }
    }
    if (exec_stopped) break;
    std::optional<std::uint64_t> next;
    auto consider = [&](std::uint64_t x) { next = next ? std::min(*next, x) : x; };
    if (busy_until) consider(*busy_until);
    if (!msgs.empty()) consider(msgs.front().first);
    if (!replies.empty()) consider(replies.front().first);
    if (!next) break;
    if (*next > opts.horizon) {
      if (m.starts.size() <= opts.maxlen) throw Error("horizon exhausted before warm-up completed");
      break;
    }
    now = *next;
  }

  m.executed = m.starts.size();
  const std::size_t w = opts.maxlen;
  if (m.executed > w + 1) {
    m.elapsed = m.starts.back() - m.starts[w];
    m.busy = E * (m.executed - 1 - w);
    for (std::size_t j = w + 1; j < m.executed; ++j) {
      std::uint64_t gap = m.starts[j] - (m.starts[j - 1] + E);
      if (gap > 0) ++m.idle_gaps[gap];
    }
  }
  m.utilization = m.elapsed == 0 ? Rational(1) : Rational(static_cast<std::int64_t>(m.busy),
                                                           static_cast<std::int64_t>(m.elapsed));
  return m;
}

std::string export_metrics(const Metrics& m) {
  std::ostringstream out;
  out << "metrics protocol=" << (m.protocol == TimedProtocol::Simple ? "simple" : "run-ahead")
      << " maxlen=" << m.maxlen << " exec=" << m.timing.exec << " latency=" << m.timing.latency
      << " executed=" << m.executed << " messages=" << m.messages << " elapsed=" << m.elapsed
      << " busy=" << m.busy << " utilization=" << m.utilization.str()
      << " terminated=" << (m.terminated ? "true" : "false") << "\n";
  for (const auto& [len, count] : m.idle_gaps) out << "idle_gap length=" << len << " count=" << count << "\n";
  return out.str();
}

}  // namespace isproc
