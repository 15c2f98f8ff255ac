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

// Constructive expressiveness results as compilers.

#ifndef ISPROC_COMPILERS_HPP_
#define ISPROC_COMPILERS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "isproc/acp.hpp"
#include "isproc/pga.hpp"
#include "isproc/pgld.hpp"
#include "isproc/services.hpp"
#include "isproc/thread.hpp"

namespace isproc {

/// (F_0;...;F_n)* with one three-instruction block per thread state.
/// Throws InvariantError if the thread performs tau.
PgaTerm thread_to_pga(const ThreadSpec& spec);

/// Thread over ac(e,t) instructions whose process, with t hidden, equals
/// the process of `spec` after a leading silent step. Each equation
/// becomes a chain of alternative choices that cycles back to its start.
/// Throws InvariantError on labels other than atomic actions, or on t.
ThreadSpec linear_to_choice_thread(const LinearProcSpec& spec);

/// thread_to_pga(linear_to_choice_thread(spec)).
PgaTerm acp_to_pgaac(const LinearProcSpec& spec);

/// Positional layout of the canonical form, with absolute jumps and at
/// most two trailing jumps for wrap-around.
PgldProgram pga_to_pgld(const PgaTerm& t);

/// +a_i ; ##(3k_i+1) ; ##(3k'_i+1) per postconditional state, followed
/// by ##0;##0;##0;##(3n+4). Target block n stands for S and n+1 for D.
/// A thread whose root is D becomes the single self-jump ##1.
PgldProgram to_block_shape(const ThreadSpec& spec);

/// Prefix of the register foci.
inline constexpr std::string_view kRegisterPrefix = "br:";
std::string register_focus(std::size_t i);

struct Uniquified {
  PgldProgram program;
  std::size_t registers;
};

/// Program in which every basic instruction outside the register foci
/// occurs once, simulating p with one-hot state registers br:1..br:k (all
/// initially false). k is the number of postconditional states of the
/// minimal thread of p. Throws InvariantError if p uses a register focus.
Uniquified uniquify_with_registers(const PgldProgram& p);

/// [(br:1, BR_False), ..., (br:k, BR_False)]
std::vector<std::pair<std::string, Service>> register_chain(std::size_t k);

/// Whether the process of `compiled`, with t hidden and after a leading
/// silent step, is rooted branching bisimilar to tau . spec.
bool realizes_linear(const PgaTerm& compiled, const LinearProcSpec& spec);

/// Whether u, run against its registers with the register traffic hidden,
/// behaves as `original` up to a leading silent step.
bool realizes_thread(const Uniquified& u, const ThreadSpec& original);

}  // namespace isproc

#endif  // ISPROC_COMPILERS_HPP_
