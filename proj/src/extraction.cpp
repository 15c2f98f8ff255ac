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

#include "isproc/extraction.hpp"

#include <vector>

namespace isproc {

namespace {

// Positions 0..size-1 cover the prefix and one copy of the period; `size`
// itself stands for "no instruction here", which is inaction.
class PositionSpace {
 public:
  explicit PositionSpace(const InstructionSeq& s)
      : s_(s), prefix_(s.prefix().size()), size_(s.representation_size()) {}

  std::size_t size() const { return size_; }
  std::size_t missing() const { return size_; }

  const PrimitiveInstruction& at(std::size_t p) const { return *s_.nth(p + 1); }

  /// Position reached by moving `l` steps forward from `p`.
  std::size_t advance(std::size_t p, std::uint64_t l) const {
    if (l < size_ - p) return p + l;
    if (s_.finite()) return missing();
    const std::size_t period = size_ - prefix_;
    // The target lies in the periodic part, so p + l >= prefix.
    std::uint64_t off = p >= prefix_ ? (p - prefix_) % period + l % period : l - (prefix_ - p);
    return prefix_ + static_cast<std::size_t>(off % period);
  }

 private:
  const InstructionSeq& s_;
  std::size_t prefix_;
  std::size_t size_;
};

}  // namespace

ThreadSpec extract(const InstructionSeq& s) {
  PositionSpace pos(s);
  const std::size_t n = pos.size();
  const std::size_t dead = n;

  // Resolve jump chains. resolved[p] is the first non-jump position reached
  // from p, or `dead` for #0, missing positions and jump cycles.
  constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);
  std::vector<std::size_t> resolved(n + 1, kUnknown);
  resolved[dead] = dead;
  for (std::size_t start = 0; start < n; ++start) {
    if (resolved[start] != kUnknown) continue;
    std::vector<std::size_t> chain;
    std::vector<bool> on_chain(n + 1, false);
    std::size_t p = start;
    std::size_t result;
    for (;;) {
      if (resolved[p] != kUnknown) {
        result = resolved[p];
        break;
      }
      if (on_chain[p]) {
        result = dead;
        break;
      }
      const PrimitiveInstruction& u = pos.at(p);
      if (u.op() != PrimitiveInstruction::Op::Jump) {
        result = p;
        break;
      }
      on_chain[p] = true;
      chain.push_back(p);
      p = u.offset() == 0 ? p : pos.advance(p, u.offset());
    }
    for (std::size_t q : chain) resolved[q] = result;
    if (resolved[start] == kUnknown) resolved[start] = result;
  }

  std::vector<ThreadRhs> states(n + 1, ThreadRhs::dead());
  for (std::size_t p = 0; p < n; ++p) {
    const PrimitiveInstruction& u = pos.at(p);
    auto go = [&](std::uint64_t l) { return resolved[pos.advance(p, l)]; };
    switch (u.op()) {
      case PrimitiveInstruction::Op::Plain:
        states[p] = ThreadRhs::cond(ThreadAction::basic(u.basic()), go(1), go(1));
        break;
      case PrimitiveInstruction::Op::PosTest:
        states[p] = ThreadRhs::cond(ThreadAction::basic(u.basic()), go(1), go(2));
        break;
      case PrimitiveInstruction::Op::NegTest:
        states[p] = ThreadRhs::cond(ThreadAction::basic(u.basic()), go(2), go(1));
        break;
      case PrimitiveInstruction::Op::Halt:
        states[p] = ThreadRhs::stop();
        break;
      case PrimitiveInstruction::Op::Jump:
        break;  // aliases only; never referenced after resolution
    }
  }
  return ThreadSpec::make(states, resolved[0]);
}

}  // namespace isproc
