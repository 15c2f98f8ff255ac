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

// Regular threads as finite linear recursive specifications.
//
// Every state is S (stop), D (deadlock) or a postconditional composition
// x <a> y: perform a, continue with x on reply T and with y on reply F.
//
// Text format, one equation per line:
//   X = S
//   X = D
//   X = <a> Y | Z
// The first left-hand side is the root unless a `root X` line is present.
// `tau` inside the brackets denotes the internal action.

#ifndef ISPROC_THREAD_HPP_
#define ISPROC_THREAD_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "isproc/pga.hpp"

namespace isproc {

/// Tau or a basic instruction.
class ThreadAction {
 public:
  static ThreadAction tau() { return ThreadAction(); }
  static ThreadAction basic(BasicInstruction b) { return ThreadAction(std::move(b)); }

  bool is_tau() const { return !b_.has_value(); }
  const BasicInstruction& instruction() const { return *b_; }
  std::string str() const { return is_tau() ? "tau" : b_->str(); }

  friend auto operator<=>(const ThreadAction&, const ThreadAction&) = default;
  friend bool operator==(const ThreadAction&, const ThreadAction&) = default;

 private:
  ThreadAction() = default;
  explicit ThreadAction(BasicInstruction b) : b_(std::move(b)) {}
  std::optional<BasicInstruction> b_;
};

struct ThreadRhs {
  enum class Kind : std::uint8_t { Stop, Dead, Cond };

  Kind kind = Kind::Dead;
  std::optional<ThreadAction> action;  // set iff kind == Cond
  std::size_t on_true = 0;
  std::size_t on_false = 0;

  static ThreadRhs stop() { return {Kind::Stop, std::nullopt, 0, 0}; }
  static ThreadRhs dead() { return {Kind::Dead, std::nullopt, 0, 0}; }
  static ThreadRhs cond(ThreadAction a, std::size_t t, std::size_t f) { return {Kind::Cond, std::move(a), t, f}; }

  friend bool operator==(const ThreadRhs&, const ThreadRhs&) = default;
};

/// A finite linear recursive specification with every state reachable from
/// the root. States are numbered breadth-first from the root (state 0),
/// exploring the true branch before the false branch, so two specs that are
/// equal up to renaming are structurally equal.
class ThreadSpec {
 public:
  /// Trims unreachable states and renumbers. Throws InvariantError on
  /// dangling indices.
  static ThreadSpec make(const std::vector<ThreadRhs>& states, std::size_t root);
  static ThreadSpec stop_spec() { return make({ThreadRhs::stop()}, 0); }
  static ThreadSpec dead_spec() { return make({ThreadRhs::dead()}, 0); }

  std::size_t size() const { return states_.size(); }
  const ThreadRhs& state(std::size_t i) const { return states_.at(i); }
  const std::vector<ThreadRhs>& states() const { return states_; }
  const ThreadRhs& root() const { return states_.front(); }

  /// The same thread, rooted at state `i`.
  ThreadSpec rerooted(std::size_t i) const { return make(states_, i); }

  std::string str() const;

  friend bool operator==(const ThreadSpec&, const ThreadSpec&) = default;

 private:
  ThreadSpec() = default;
  std::vector<ThreadRhs> states_;
};

/// Residual threads, as state indices. Every state is reachable, so this is
/// {0, ..., size-1}.
std::set<std::size_t> residuals(const ThreadSpec& spec);

/// Table of residuals as (Stop | Dead | (action, true, false)) rows.
std::vector<ThreadRhs> residual_table(const ThreadSpec& spec);
ThreadSpec from_residual_table(const std::vector<ThreadRhs>& table, std::size_t root);

bool regular_over(const ThreadSpec& spec, const std::set<ThreadAction>& acts);

/// Depth-n approximation. The result is acyclic.
ThreadSpec project(const ThreadSpec& spec, std::size_t n);

/// Makes both branches of every tau-postconditional follow the true branch.
ThreadSpec normalize_tau(const ThreadSpec& spec);

/// Smallest spec denoting the same thread (tau is treated as an ordinary
/// action; apply normalize_tau first for thread equality).
ThreadSpec minimize(const ThreadSpec& spec);

bool thread_equal(const ThreadSpec& a, const ThreadSpec& b);

/// An element of the basic actions extended with the stop and dead markers.
class BActiElem {
 public:
  enum class Kind : std::uint8_t { Basic, StopD, DeadD };

  static BActiElem basic(BasicInstruction b) { return BActiElem(Kind::Basic, std::move(b)); }
  static BActiElem stopd() { return BActiElem(Kind::StopD, {}); }
  static BActiElem deadd() { return BActiElem(Kind::DeadD, {}); }

  Kind kind() const { return kind_; }
  bool is_basic() const { return kind_ == Kind::Basic; }
  const BasicInstruction& instruction() const { return b_; }
  std::string str() const;

  friend auto operator<=>(const BActiElem&, const BActiElem&) = default;
  friend bool operator==(const BActiElem&, const BActiElem&) = default;

 private:
  BActiElem(Kind k, BasicInstruction b) : kind_(k), b_(std::move(b)) {}
  Kind kind_;
  BasicInstruction b_;
};

/// stopd for S, deadd for D, the action otherwise. Throws InvariantError on
/// a tau-postconditional, which has no basic action.
BActiElem first_action(const ThreadSpec& spec);
/// Continuation after reply T (resp. F); the Dead spec for S and D.
ThreadSpec step_true(const ThreadSpec& spec);
ThreadSpec step_false(const ThreadSpec& spec);

ThreadSpec parse_thread(std::string_view text);
ThreadAction parse_thread_action(std::string_view text);

}  // namespace isproc

#endif  // ISPROC_THREAD_HPP_
