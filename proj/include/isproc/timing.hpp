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

// Discrete-time utilization simulator for the two protocols. Time is an
// integer tick count. Each channel hop takes `latency` ticks and a channel
// carries any number of messages in flight, in order. Executing an
// instruction takes `exec` ticks; sending and bookkeeping take no time.

#ifndef ISPROC_TIMING_HPP_
#define ISPROC_TIMING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isproc/protocols.hpp"

namespace isproc {

/// Exact non-negative fraction in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  /// "p/q"
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct Timing {
  std::uint64_t exec = 1;
  std::uint64_t latency = 0;
};

/// Replies the environment gives, in execution order.
struct ReplyPolicy {
  /// Cycled through when non-empty.
  std::vector<bool> fixed;
  /// Pseudo-random replies when `fixed` is empty; all true when unset too.
  std::optional<std::uint64_t> seed;
};

enum class TimedProtocol : std::uint8_t { Simple, RunAhead };

struct SimOptions {
  TimedProtocol protocol = TimedProtocol::RunAhead;
  std::size_t maxlen = 1;  // run-ahead depth; also the warm-up length
  Timing timing;
  ReplyPolicy replies;
  std::uint64_t horizon = 100000000;  // ticks
};

struct Metrics {
  TimedProtocol protocol = TimedProtocol::RunAhead;
  std::size_t maxlen = 0;
  Timing timing;
  std::size_t executed = 0;
  std::size_t messages = 0;
  /// Start tick of every executed instruction.
  std::vector<std::uint64_t> starts;
  std::uint64_t elapsed = 0;
  std::uint64_t busy = 0;
  /// busy / elapsed over [start of the first post-warm-up instruction,
  /// start of the last instruction); 1 when that window is empty.
  Rational utilization;
  /// Idle gap length -> count, between consecutive post-warm-up executions.
  std::map<std::uint64_t, std::size_t> idle_gaps;
  bool terminated = false;
};

/// Runs thread t. Throws Error if the horizon passes before the warm-up is
/// over.
Metrics simulate_timed(const ThreadSpec& t, const SimOptions& opts);
/// a;a;...;a;! with n copies of a.
ThreadSpec straight_line(std::size_t n);

/// Key-value text, one record per line.
std::string export_metrics(const Metrics& m);

}  // namespace isproc

#endif  // ISPROC_TIMING_HPP_
