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

// Finite-state process engine: labelled transition systems with a
// successful-termination predicate, the composition operators, process
// extraction from threads, and bisimulation checks.
//
// Action label syntax:
//   tau  i  j  stp  stp*          silent, internal i/j, termination, stp|stp
//   snd[c](d)  rcv[c](d)          channel c (a number)
//   snd{f}(d)  rcv{f}(d)          focus f; bare actions use an empty focus
//   snds(d)  rcvs(d)              the service side of a use
//   name                          atomic action
//
// Linear process specification syntax, one equation per line:
//   X = a.Y + b.Z + c + 0
// Variables start with an uppercase letter; `0` is deadlock; a summand
// without a variable terminates after its action. The first equation is
// the root.

#ifndef ISPROC_ACP_HPP_
#define ISPROC_ACP_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isproc/services.hpp"
#include "isproc/thread.hpp"

namespace isproc {

struct ActionLabel {
  enum class Kind : std::uint8_t {
    Tau, I, J, Stp, StpStar, Snd, Rcv, Atomic, SndFocus, RcvFocus, SndServ, RcvServ
  };

  Kind kind = Kind::Tau;
  std::string where;    // channel or focus
  std::string payload;  // datum, or the name of an atomic action

  static ActionLabel tau() { return {}; }
  static ActionLabel internal_i() { return {Kind::I, {}, {}}; }
  static ActionLabel internal_j() { return {Kind::J, {}, {}}; }
  static ActionLabel stp() { return {Kind::Stp, {}, {}}; }
  static ActionLabel stp_star() { return {Kind::StpStar, {}, {}}; }
  static ActionLabel snd(int channel, std::string d) { return {Kind::Snd, std::to_string(channel), std::move(d)}; }
  static ActionLabel rcv(int channel, std::string d) { return {Kind::Rcv, std::to_string(channel), std::move(d)}; }
  static ActionLabel atomic(std::string e) { return {Kind::Atomic, {}, std::move(e)}; }
  static ActionLabel snd_focus(std::string f, std::string d) { return {Kind::SndFocus, std::move(f), std::move(d)}; }
  static ActionLabel rcv_focus(std::string f, std::string d) { return {Kind::RcvFocus, std::move(f), std::move(d)}; }
  static ActionLabel snd_serv(std::string d) { return {Kind::SndServ, {}, std::move(d)}; }
  static ActionLabel rcv_serv(std::string d) { return {Kind::RcvServ, {}, std::move(d)}; }

  bool is_tau() const { return kind == Kind::Tau; }
  std::string str() const;

  friend auto operator<=>(const ActionLabel&, const ActionLabel&) = default;
  friend bool operator==(const ActionLabel&, const ActionLabel&) = default;
};

ActionLabel parse_label(std::string_view text);

/// Symmetric partial communication function; undefined pairs communicate
/// to deadlock.
class CommFn {
 public:
  using Fn = std::function<std::optional<ActionLabel>(const ActionLabel&, const ActionLabel&)>;

  /// No communication at all.
  static CommFn none();
  /// snd[c](d) | rcv[c](d) = j.
  static CommFn channels();
  /// snd{f}(d) | rcv{f}(d) = i and stp | stp = stp*.
  static CommFn service_use();
  /// `fn` is consulted for both argument orders.
  static CommFn custom(Fn fn) { return CommFn(std::move(fn)); }

  /// Throws InvariantError if the underlying function yields tau.
  std::optional<ActionLabel> operator()(const ActionLabel& a, const ActionLabel& b) const;

 private:
  explicit CommFn(Fn fn) : fn_(std::move(fn)) {}
  Fn fn_;
};

/// Finite labelled transition system. Labels are interned per system; label
/// 0 is always tau.
class Lts {
 public:
  using State = std::uint32_t;
  using LabelId = std::uint32_t;
  static constexpr LabelId kTau = 0;

  struct Edge {
    LabelId label;
    State target;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  Lts();

  State add_state(bool terminating = false);
  LabelId intern(const ActionLabel& a);
  void add_transition(State from, const ActionLabel& a, State to) { add_transition_id(from, intern(a), to); }
  void add_transition_id(State from, LabelId a, State to);
  void set_root(State s) { root_ = s; }
  void set_terminating(State s, bool t) { terminating_.at(s) = t; }

  std::size_t num_states() const { return out_.size(); }
  std::size_t num_transitions() const;
  std::size_t num_labels() const { return labels_.size(); }
  State root() const { return root_; }
  bool terminating(State s) const { return terminating_[s] != 0; }
  const std::vector<Edge>& out(State s) const { return out_[s]; }
  const ActionLabel& label(LabelId id) const { return labels_[id]; }
  std::optional<LabelId> find_label(const ActionLabel& a) const;

  /// Reachable part, numbered breadth-first from the root (which becomes
  /// state 0), with sorted duplicate-free edges.
  Lts trimmed() const;

 private:
  std::vector<ActionLabel> labels_;
  std::map<ActionLabel, LabelId> label_ids_;
  std::vector<std::vector<Edge>> out_;
  std::vector<char> terminating_;
  State root_ = 0;
};

struct Summand {
  enum class Kind : std::uint8_t { Step, Only, Deadlock };
  Kind kind = Kind::Deadlock;
  ActionLabel label;
  std::string target;

  static Summand step(ActionLabel a, std::string x) { return {Kind::Step, std::move(a), std::move(x)}; }
  static Summand only(ActionLabel a) { return {Kind::Only, std::move(a), {}}; }
  static Summand deadlock() { return {}; }

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Ordered equations; the first is the root. An empty summand list is
/// deadlock.
class LinearProcSpec {
 public:
  struct Equation {
    std::string var;
    std::vector<Summand> summands;
    friend bool operator==(const Equation&, const Equation&) = default;
  };

  /// Throws InvariantError on duplicate or undefined variables.
  explicit LinearProcSpec(std::vector<Equation> eqs);

  const std::vector<Equation>& equations() const { return eqs_; }
  std::string str() const;

  friend bool operator==(const LinearProcSpec&, const LinearProcSpec&) = default;

 private:
  std::vector<Equation> eqs_;
};

LinearProcSpec parse_linear(std::string_view text);

Lts lts_of_linear(const LinearProcSpec& spec);

/// Parallel composition. A product state terminates iff both components
/// do. Throws BudgetExceeded beyond `budget` states.
Lts merge(const Lts& a, const Lts& b, const CommFn& gamma, std::size_t budget = 1000000);

using LabelPred = std::function<bool(const ActionLabel&)>;
using LabelMap = std::function<ActionLabel(const ActionLabel&)>;

/// Removes transitions whose label satisfies `blocked`. Throws
/// InvariantError if the predicate holds for tau.
Lts encapsulate(const Lts& l, const LabelPred& blocked);
Lts encapsulate(const Lts& l, const std::set<ActionLabel>& blocked);
/// Relabels transitions whose label satisfies `hidden` to tau.
Lts abstract(const Lts& l, const LabelPred& hidden);
Lts abstract(const Lts& l, const std::set<ActionLabel>& hidden);
/// Relabels by `h`. Throws InvariantError if h moves tau or maps a visible
/// label to tau.
Lts rename(const Lts& l, const LabelMap& h);
Lts rename(const Lts& l, const std::map<ActionLabel, ActionLabel>& h);

/// tau . l
Lts tau_prefix(const Lts& l);

struct ExtractOptions {
  /// Hide the termination action stp.
  bool abstract_stp = false;
  /// Add a rcv{f}(B) branch into deadlock after every request.
  bool service_aware = false;
};

/// The process of a thread.
Lts process_extract(const ThreadSpec& spec, ExtractOptions opts = {});

/// Process-level use of a finite service on focus `f`. `t` must be a raw
/// extraction (with stp visible), normally made with service_aware set.
Lts use_process(const Lts& t, const std::string& focus, const Service& h);

/// Depth-n approximation: visible steps consume depth, tau steps do not.
Lts project_lts(const Lts& l, std::size_t n);

bool strong_bisim(const Lts& a, const Lts& b);
/// Divergence-insensitive branching bisimilarity.
bool branching_bisim(const Lts& a, const Lts& b);
bool rooted_branching_bisim(const Lts& a, const Lts& b);

/// Quotient modulo branching bisimilarity (tau-cycles collapsed).
Lts branching_quotient(const Lts& l);

/// Graphviz rendering with breadth-first state numbering.
std::string export_dot(const Lts& l);

}  // namespace isproc

#endif  // ISPROC_ACP_HPP_
