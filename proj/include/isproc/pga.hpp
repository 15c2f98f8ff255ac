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

// Single-pass instruction sequences: primitive instructions, terms built with
// concatenation and repetition, and their values as eventually periodic
// sequences.
//
// Textual syntax:
//   a           plain basic instruction (bare action)
//   f.m         plain focus.method instruction
//   ac(e1,e2)   alternative choice instruction; `t` is the internal action
//   +x  -x      positive / negative test on basic instruction x
//   #n          forward jump
//   !           termination
//   u;v  (u)*   concatenation, repetition

#ifndef ISPROC_PGA_HPP_
#define ISPROC_PGA_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace isproc {

/// Reserved name of the internal atomic action used by alternative choice.
inline constexpr std::string_view kInternalAction = "t";

/// True iff `s` is a nonempty identifier: [a-z0-9:._-] followed by
/// [A-Za-z0-9:._-]*.
bool is_identifier(std::string_view s);

class BasicInstruction {
 public:
  enum class Kind : std::uint8_t { FocusMethod, AltChoice };

  BasicInstruction() = default;

  /// `f.m`. An empty focus denotes a bare action named by `method`.
  static BasicInstruction focus_method(std::string focus, std::string method);
  static BasicInstruction action(std::string name) { return focus_method("", std::move(name)); }
  static BasicInstruction alt_choice(std::string e1, std::string e2);

  Kind kind() const { return kind_; }
  bool is_alt_choice() const { return kind_ == Kind::AltChoice; }
  const std::string& focus() const { return first_; }
  const std::string& method() const { return second_; }
  const std::string& first_choice() const { return first_; }
  const std::string& second_choice() const { return second_; }

  std::string str() const;

  friend auto operator<=>(const BasicInstruction&, const BasicInstruction&) = default;
  friend bool operator==(const BasicInstruction&, const BasicInstruction&) = default;

 private:
  Kind kind_ = Kind::FocusMethod;
  std::string first_;
  std::string second_;
};

/// Declared vocabulary of a run. Bare actions count as methods without a
/// focus.
struct Alphabet {
  std::set<std::string> foci;
  std::set<std::string> meths;
  std::set<std::string> aacts;

  /// Throws InvariantError on malformed identifiers or a declared `t`.
  void validate() const;
  bool admits(const BasicInstruction& b) const;
  void add(const BasicInstruction& b);
};

class PrimitiveInstruction {
 public:
  enum class Op : std::uint8_t { Plain, PosTest, NegTest, Jump, Halt };

  static PrimitiveInstruction plain(BasicInstruction b) { return {Op::Plain, std::move(b), 0}; }
  static PrimitiveInstruction pos_test(BasicInstruction b) { return {Op::PosTest, std::move(b), 0}; }
  static PrimitiveInstruction neg_test(BasicInstruction b) { return {Op::NegTest, std::move(b), 0}; }
  static PrimitiveInstruction jump(std::uint64_t l) { return {Op::Jump, {}, l}; }
  static PrimitiveInstruction halt() { return {Op::Halt, {}, 0}; }

  Op op() const { return op_; }
  bool has_basic() const { return op_ == Op::Plain || op_ == Op::PosTest || op_ == Op::NegTest; }
  const BasicInstruction& basic() const { return basic_; }
  std::uint64_t offset() const { return offset_; }

  std::string str() const;

  friend auto operator<=>(const PrimitiveInstruction&, const PrimitiveInstruction&) = default;
  friend bool operator==(const PrimitiveInstruction&, const PrimitiveInstruction&) = default;

 private:
  PrimitiveInstruction(Op op, BasicInstruction b, std::uint64_t l)
      : op_(op), basic_(std::move(b)), offset_(l) {}

  Op op_ = Op::Halt;
  BasicInstruction basic_;
  std::uint64_t offset_ = 0;
};

/// Immutable closed term. Copies share structure.
class PgaTerm {
 public:
  enum class Kind : std::uint8_t { Instr, Concat, Repeat };

  static PgaTerm instr(PrimitiveInstruction u);
  static PgaTerm concat(PgaTerm lhs, PgaTerm rhs);
  static PgaTerm repeat(PgaTerm body);
  /// Right-nested concatenation of a nonempty instruction list.
  static PgaTerm sequence(const std::vector<PrimitiveInstruction>& instrs);

  Kind kind() const;
  const PrimitiveInstruction& instruction() const;
  const PgaTerm& lhs() const;
  const PgaTerm& rhs() const;
  const PgaTerm& body() const;

  /// Nesting depth; a single instruction has depth 1.
  std::size_t depth() const;
  std::string str() const;

 private:
  struct Node;
  explicit PgaTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Nonempty, finite or eventually periodic sequence of primitive instructions,
/// kept in normal form: minimal period, then minimal prefix.
class InstructionSeq {
 public:
  /// Normalizes. Throws InvariantError if both parts are empty.
  static InstructionSeq make(std::vector<PrimitiveInstruction> prefix,
                             std::vector<PrimitiveInstruction> period);

  const std::vector<PrimitiveInstruction>& prefix() const { return prefix_; }
  const std::vector<PrimitiveInstruction>& period() const { return period_; }
  bool finite() const { return period_.empty(); }
  /// |prefix| + |period|.
  std::size_t representation_size() const { return prefix_.size() + period_.size(); }

  /// Instruction at 1-based position `i`; none past the end of a finite sequence or at 0.
  std::optional<PrimitiveInstruction> nth(std::size_t i) const;

  std::string str() const;

  friend bool operator==(const InstructionSeq&, const InstructionSeq&) = default;

 private:
  InstructionSeq() = default;
  std::vector<PrimitiveInstruction> prefix_;
  std::vector<PrimitiveInstruction> period_;
};

InstructionSeq normalize(std::vector<PrimitiveInstruction> prefix,
                         std::vector<PrimitiveInstruction> period);

InstructionSeq eval(const PgaTerm& t);

/// `t` or `t;t'*` with repetition-free t, t'.
PgaTerm canonical_term(const InstructionSeq& s);

bool term_equal(const PgaTerm& a, const PgaTerm& b);

PgaTerm parse_pga(std::string_view text);
BasicInstruction parse_basic_instruction(std::string_view text);

}  // namespace isproc

#endif  // ISPROC_PGA_HPP_
