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

// Remote instruction processing. An instruction stream generator walks a
// regular thread and sends instructions over a message channel (1 -> 2) to
// an execution unit, which performs them as f.m requests on its environment
// and returns the replies over a reply channel (3 -> 4).
//
// The simple protocol sends one instruction and waits for its reply. The
// run-ahead protocol lets the generator send up to `maxlen` levels of
// speculative instructions, each tagged with the reply sequence it depends
// on and with the number of replies acknowledged since the last message.

#ifndef ISPROC_PROTOCOLS_HPP_
#define ISPROC_PROTOCOLS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isproc/acp.hpp"
#include "isproc/thread.hpp"

namespace isproc {

/// Finite sequence of Boolean replies, at most 31 long.
class Replies {
 public:
  static constexpr std::size_t kMaxLen = 31;

  Replies() = default;
  /// From a string over {T, F}.
  static Replies parse(std::string_view s);

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  bool at(std::size_t i) const { return (bits_ >> i) & 1u; }
  bool head() const { return at(0); }
  Replies tail() const;
  Replies tail(std::size_t k) const;
  Replies push(bool r) const;
  bool starts_with(const Replies& p) const;
  std::uint32_t bits() const { return bits_; }
  std::string str() const;

  friend auto operator<=>(const Replies&, const Replies&) = default;
  friend bool operator==(const Replies&, const Replies&) = default;

 private:
  std::uint8_t len_ = 0;
  std::uint32_t bits_ = 0;  // bit i holds reply i; 1 is T
};

/// A thread flattened for the generators: state 0 is the root, and a Dead
/// state is always present so that the continuations of S and D exist.
class ThreadTable {
 public:
  explicit ThreadTable(const ThreadSpec& spec);

  std::size_t size() const { return states_.size(); }
  std::size_t root() const { return 0; }
  std::size_t dead() const { return dead_; }
  const BActiElem& act(std::size_t q) const { return acts_.at(q); }
  std::size_t thrt(std::size_t q) const;
  std::size_t thrf(std::size_t q) const;
  /// The thread rooted at state q.
  ThreadSpec spec(std::size_t q) const { return ThreadSpec::make(states_, q); }

 private:
  std::vector<ThreadRhs> states_;
  std::vector<BActiElem> acts_;
  std::size_t dead_;
};

bool enablea(const BActiElem& a, const ThreadSpec& spec);

struct GenEntry {
  Replies replies;
  std::size_t thread;  // state of a ThreadTable
  friend auto operator<=>(const GenEntry&, const GenEntry&) = default;
};

struct GenState {
  std::size_t ack = 0;
  std::set<GenEntry> pending;
  friend bool operator==(const GenState&, const GenState&) = default;
};

struct Msg {
  std::size_t ack = 0;
  Replies replies;
  BActiElem instr = BActiElem::stopd();
  std::string str() const;
  friend auto operator<=>(const Msg&, const Msg&) = default;
};

struct ExecEntry {
  Replies replies;
  BActiElem instr = BActiElem::stopd();
  friend auto operator<=>(const ExecEntry&, const ExecEntry&) = default;
};

struct ExecState {
  std::size_t unacked = 0;
  std::set<ExecEntry> table;
  /// The replies counted by `unacked`, oldest first. Maintained by the
  /// filtering execution unit only; empty otherwise.
  Replies history;
  friend bool operator==(const ExecState&, const ExecState&) = default;
};

/// Generator update after sending the message for `entry`. Throws
/// InvariantError if `entry` is not pending.
GenState updpm(const ThreadTable& t, const GenEntry& entry, const GenState& g);
/// Generator update after consuming reply r.
GenState updcr(bool r, const GenState& g);
/// Entries with the shortest reply sequence.
std::set<GenEntry> select(const std::set<GenEntry>& pending);
/// Execution unit update after consuming a message.
ExecState updcm(const Msg& m, const ExecState& x);
/// Execution unit update after producing reply r.
ExecState updpr(bool r, const ExecState& x);
/// Filtering variant of updcm: a message whose reply sequence contradicts
/// the replies produced since its acknowledgement point is discarded.
/// Requires `history` to be maintained.
ExecState updcm_filtered(const Msg& m, const ExecState& x);
/// updpr that also records r in `history`.
ExecState updpr_tracked(bool r, const ExecState& x);
bool enable(const BActiElem& a, const std::set<ExecEntry>& table);

struct ProtocolConfig {
  std::size_t maxlen = 1;
  std::size_t capacity = 1;
  /// Exploration cap on composite states.
  std::size_t budget = 1000000;
  void validate() const;
};

/// When a composite state counts as successfully terminated.
enum class TermMode : std::uint8_t {
  /// As in the parallel composition: never, since the channels never stop.
  Literal,
  /// When generator and execution unit have terminated (for the simple
  /// protocol the channels are then necessarily empty as well).
  Adjusted
};

enum class Variant : std::uint8_t {
  /// The recursive equations as given.
  Original,
  /// Execution unit discards stale messages, and each endpoint keeps
  /// accepting (and dropping) channel deliveries after it has terminated.
  Repaired
};

struct ProtocolStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  /// Longest reply sequence seen in a generator state.
  std::size_t max_pending_len = 0;
  /// Largest acknowledgement counter seen on either side.
  std::size_t max_counter = 0;
  /// States whose execution unit table holds two entries with the empty
  /// reply sequence.
  std::size_t ambiguous_exec_states = 0;
  /// Composite states without outgoing transitions that are not
  /// terminated.
  std::size_t deadlocks = 0;
};

struct ProtocolRun {
  Lts system;  // before abstraction; internal communication is labelled j
  ProtocolStats stats;
};

ProtocolRun build_simple(const ThreadSpec& t, TermMode mode, std::size_t budget = 1000000);
ProtocolRun build_complex(const ThreadSpec& t, const ProtocolConfig& cfg, TermMode mode,
                          Variant variant = Variant::Original);

struct VerifyResult {
  bool equivalent = false;
  ProtocolStats stats;
  std::size_t reference_states = 0;
};

/// tau . tau_{j}(system) against tau . (process of t with stp hidden), up to
/// rooted branching bisimilarity.
VerifyResult verify_simple(const ThreadSpec& t, TermMode mode, std::size_t budget = 1000000);
VerifyResult verify_complex(const ThreadSpec& t, const ProtocolConfig& cfg, TermMode mode,
                            Variant variant = Variant::Original);

/// The abstracted, tau-prefixed protocol process that verify_* compares.
Lts observable(const ProtocolRun& run);
/// The reference process tau . ceil(t).
Lts reference_process(const ThreadSpec& t);

/// Whether t can reach S.
bool can_terminate(const ThreadSpec& t);

// -- Stepping interface for trace-level checks -------------------------------

/// One composite state of the run-ahead protocol.
struct ComplexState {
  enum class GenMode : std::uint8_t { Active, Done };
  enum class ExecMode : std::uint8_t { Ready, Awaiting, Replying, Done };

  GenMode gen_mode = GenMode::Active;
  GenState gen;
  std::vector<Msg> msg_channel;   // oldest first
  std::vector<bool> reply_channel;
  ExecMode exec_mode = ExecMode::Ready;
  std::string awaiting_focus;     // Awaiting
  bool reply = false;             // Replying
  ExecState exec;

  friend bool operator==(const ComplexState&, const ComplexState&) = default;
};

struct ComplexMove {
  enum class Kind : std::uint8_t {
    Send,          // generator puts a message into the message channel
    Deliver,       // message channel hands a message to the execution unit
    Request,       // execution unit issues f.m (external)
    Receive,       // execution unit gets the reply (external)
    ReturnReply,   // execution unit puts a reply into the reply channel
    ConsumeReply,  // generator takes a reply from the reply channel
    GenStop,       // generator terminates
    ExecStop,      // execution unit terminates after stopd
    Drop           // a terminated endpoint drops a delivery (repaired only)
  };
  Kind kind;
  ActionLabel label;
  ComplexState next;
  std::optional<Msg> msg;  // Send and Deliver
};

class ComplexSystem {
 public:
  ComplexSystem(const ThreadSpec& t, ProtocolConfig cfg, Variant variant);

  const ThreadTable& table() const { return table_; }
  const ProtocolConfig& config() const { return cfg_; }
  ComplexState initial() const;
  std::vector<ComplexMove> moves(const ComplexState& s) const;
  bool terminated(const ComplexState& s) const;

 private:
  ThreadTable table_;
  ProtocolConfig cfg_;
  Variant variant_;
};

}  // namespace isproc

#endif  // ISPROC_PROTOCOLS_HPP_
