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

#include "isproc/pgld.hpp"

#include "isproc/error.hpp"
#include "isproc/extraction.hpp"
#include "text_cursor.hpp"

namespace isproc {

std::string PgldInstruction::str() const {
  switch (op_) {
    case Op::Plain: return basic_.str();
    case Op::PosTest: return "+" + basic_.str();
    case Op::NegTest: return "-" + basic_.str();
    case Op::AbsJump: return "##" + std::to_string(target_);
  }
  return {};
}

PgldProgram::PgldProgram(std::vector<PgldInstruction> instrs) : instrs_(std::move(instrs)) {
  if (instrs_.empty()) throw InvariantError("PGLD program must be nonempty");
}

std::string PgldProgram::str() const {
  std::string out;
  for (std::size_t i = 0; i < instrs_.size(); ++i) {
    if (i) out += ";";
    out += instrs_[i].str();
  }
  return out;
}

PgaTerm pgld2pga(const PgldProgram& p) {
  const std::uint64_t k = p.size();
  std::vector<PrimitiveInstruction> body;
  body.reserve(k + 2);
  for (std::uint64_t j = 1; j <= k; ++j) {
    const PgldInstruction& u = p.at(j);
    switch (u.op()) {
      case PgldInstruction::Op::Plain: body.push_back(PrimitiveInstruction::plain(u.basic())); break;
      case PgldInstruction::Op::PosTest: body.push_back(PrimitiveInstruction::pos_test(u.basic())); break;
      case PgldInstruction::Op::NegTest: body.push_back(PrimitiveInstruction::neg_test(u.basic())); break;
      case PgldInstruction::Op::AbsJump: {
        const std::uint64_t l = u.target();
        if (l == 0 || l > k) {
          body.push_back(PrimitiveInstruction::halt());
        } else if (l >= j) {
          body.push_back(PrimitiveInstruction::jump(l - j));
        } else {
          body.push_back(PrimitiveInstruction::jump(k + 2 - (j - l)));
        }
        break;
      }
    }
  }
  body.push_back(PrimitiveInstruction::halt());
  body.push_back(PrimitiveInstruction::halt());
  return PgaTerm::repeat(PgaTerm::sequence(body));
}

ThreadSpec interpret(const PgldProgram& p) {
  // State j-1 executes position j; state k is termination, k+1 inaction.
  const std::size_t k = p.size();
  const std::size_t stop = k;
  const std::size_t dead = k + 1;

  // Where control ends up when it is about to execute position j: jumps are
  // followed until a non-jump position, leaving the program, or more than k
  // consecutive jumps (which must repeat a position).
  auto land = [&](std::uint64_t j) -> std::size_t {
    for (std::size_t hops = 0; hops <= k; ++hops) {
      if (j == 0 || j > k) return stop;
      const PgldInstruction& u = p.at(j);
      if (!u.is_jump()) return j - 1;
      if (u.target() == j) return dead;
      j = u.target();
    }
    return dead;
  };

  std::vector<ThreadRhs> states(k + 2);
  states[stop] = ThreadRhs::stop();
  states[dead] = ThreadRhs::dead();
  for (std::size_t j = 1; j <= k; ++j) {
    const PgldInstruction& u = p.at(j);
    switch (u.op()) {
      case PgldInstruction::Op::Plain:
        states[j - 1] = ThreadRhs::cond(ThreadAction::basic(u.basic()), land(j + 1), land(j + 1));
        break;
      case PgldInstruction::Op::PosTest:
        states[j - 1] = ThreadRhs::cond(ThreadAction::basic(u.basic()), land(j + 1), land(j + 2));
        break;
      case PgldInstruction::Op::NegTest:
        states[j - 1] = ThreadRhs::cond(ThreadAction::basic(u.basic()), land(j + 2), land(j + 1));
        break;
      case PgldInstruction::Op::AbsJump:
        states[j - 1] = ThreadRhs::dead();  // never referenced
        break;
    }
  }
  return ThreadSpec::make(states, land(1));
}

ThreadSpec produces(const PgldProgram& p) { return extract(eval(pgld2pga(p))); }

PgldProgram parse_pgld(std::string_view text) {
  std::vector<PgldInstruction> out;
  std::size_t b = 0;
  for (;;) {
    std::size_t e = text.find(';', b);
    std::string_view item = strip_line(text.substr(b, e == std::string_view::npos ? e : e - b));
    TextCursor in(item);
    if (item.empty()) throw ParseError("empty PGLD instruction");
    try {
      if (in.accept("##")) {
        out.push_back(PgldInstruction::jump(in.natural()));
        in.expect_end();
      } else if (item.front() == '+') {
        out.push_back(PgldInstruction::pos_test(parse_basic_instruction(item.substr(1))));
      } else if (item.front() == '-') {
        out.push_back(PgldInstruction::neg_test(parse_basic_instruction(item.substr(1))));
      } else {
        out.push_back(PgldInstruction::plain(parse_basic_instruction(item)));
      }
    } catch (const InvariantError& err) {
      throw ParseError(err.what());
    }
    if (e == std::string_view::npos) break;
    b = e + 1;
  }
  return PgldProgram(std::move(out));
}

}  // namespace isproc
