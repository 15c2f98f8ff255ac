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

// PGLD: finite programs with absolute jumps and no termination instruction.
// Positions are 1-based. Execution terminates when it leaves the program or
// jumps to 0 or past the end; a jump to its own position is inaction.
//
// Text syntax: instructions separated by `;`, `##l` for an absolute jump,
// otherwise the PGA syntax for plain and test instructions.

#ifndef ISPROC_PGLD_HPP_
#define ISPROC_PGLD_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isproc/pga.hpp"
#include "isproc/thread.hpp"

namespace isproc {

class PgldInstruction {
 public:
  enum class Op : std::uint8_t { Plain, PosTest, NegTest, AbsJump };

  static PgldInstruction plain(BasicInstruction b) { return {Op::Plain, std::move(b), 0}; }
  static PgldInstruction pos_test(BasicInstruction b) { return {Op::PosTest, std::move(b), 0}; }
  static PgldInstruction neg_test(BasicInstruction b) { return {Op::NegTest, std::move(b), 0}; }
  static PgldInstruction jump(std::uint64_t l) { return {Op::AbsJump, {}, l}; }

  Op op() const { return op_; }
  bool is_jump() const { return op_ == Op::AbsJump; }
  const BasicInstruction& basic() const { return basic_; }
  std::uint64_t target() const { return target_; }
  std::string str() const;

  friend bool operator==(const PgldInstruction&, const PgldInstruction&) = default;

 private:
  PgldInstruction(Op op, BasicInstruction b, std::uint64_t l)
      : op_(op), basic_(std::move(b)), target_(l) {}
  Op op_;
  BasicInstruction basic_;
  std::uint64_t target_;
};

class PgldProgram {
 public:
  /// Throws InvariantError on an empty program.
  explicit PgldProgram(std::vector<PgldInstruction> instrs);

  std::size_t size() const { return instrs_.size(); }
  /// 1-based access.
  const PgldInstruction& at(std::size_t j) const { return instrs_.at(j - 1); }
  const std::vector<PgldInstruction>& instructions() const { return instrs_; }
  std::string str() const;

  friend bool operator==(const PgldProgram&, const PgldProgram&) = default;

 private:
  std::vector<PgldInstruction> instrs_;
};

/// (phi_1(u_1); ...; phi_k(u_k); !; !)*
PgaTerm pgld2pga(const PgldProgram& p);

/// Direct operational reading of p, independent of the PGA route.
ThreadSpec interpret(const PgldProgram& p);

/// extract(eval(pgld2pga(p))).
ThreadSpec produces(const PgldProgram& p);

PgldProgram parse_pgld(std::string_view text);

}  // namespace isproc

#endif  // ISPROC_PGLD_HPP_
