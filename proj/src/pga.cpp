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

#include "isproc/pga.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "isproc/error.hpp"
#include "text_cursor.hpp"

namespace isproc {

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_identifier_start(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return is_identifier_char(c); });
}

// -- BasicInstruction --------------------------------------------------------

BasicInstruction BasicInstruction::focus_method(std::string focus, std::string method) {
  if (!focus.empty() && !is_identifier(focus))
    throw InvariantError("malformed focus '" + focus + "'");
  if (!is_identifier(method)) throw InvariantError("malformed method '" + method + "'");
  if (!focus.empty() && focus.find('.') != std::string::npos)
    throw InvariantError("focus may not contain '.': '" + focus + "'");
  BasicInstruction b;
  b.kind_ = Kind::FocusMethod;
  b.first_ = std::move(focus);
  b.second_ = std::move(method);
  return b;
}

BasicInstruction BasicInstruction::alt_choice(std::string e1, std::string e2) {
  if (!is_identifier(e1) || !is_identifier(e2))
    throw InvariantError("malformed alternative choice arguments '" + e1 + "', '" + e2 + "'");
  BasicInstruction b;
  b.kind_ = Kind::AltChoice;
  b.first_ = std::move(e1);
  b.second_ = std::move(e2);
  return b;
}

std::string BasicInstruction::str() const {
  if (kind_ == Kind::AltChoice) return "ac(" + first_ + "," + second_ + ")";
  if (first_.empty()) return second_;
  return first_ + "." + second_;
}

// -- Alphabet ----------------------------------------------------------------

void Alphabet::validate() const {
  for (const auto* set : {&foci, &meths, &aacts})
    for (const auto& id : *set)
      if (!is_identifier(id)) throw InvariantError("malformed identifier '" + id + "'");
  if (aacts.count(std::string(kInternalAction)))
    throw InvariantError("'t' is reserved for the internal action");
}

bool Alphabet::admits(const BasicInstruction& b) const {
  if (b.is_alt_choice()) {
    auto ok = [&](const std::string& e) { return e == kInternalAction || aacts.count(e) > 0; };
    return ok(b.first_choice()) && ok(b.second_choice());
  }
  return (b.focus().empty() || foci.count(b.focus()) > 0) && meths.count(b.method()) > 0;
}

void Alphabet::add(const BasicInstruction& b) {
  if (b.is_alt_choice()) {
    for (const auto& e : {b.first_choice(), b.second_choice()})
      if (e != kInternalAction) aacts.insert(e);
    return;
  }
  if (!b.focus().empty()) foci.insert(b.focus());
  meths.insert(b.method());
}

// -- PrimitiveInstruction ------------------------------------------------------

std::string PrimitiveInstruction::str() const {
  switch (op_) {
    case Op::Plain: return basic_.str();
    case Op::PosTest: return "+" + basic_.str();
    case Op::NegTest: return "-" + basic_.str();
    case Op::Jump: return "#" + std::to_string(offset_);
    case Op::Halt: return "!";
  }
  return {};
}

// -- PgaTerm -----------------------------------------------------------------

struct PgaTerm::Node {
  Kind kind;
  std::optional<PrimitiveInstruction> instr;
  std::optional<PgaTerm> a;
  std::optional<PgaTerm> b;
  std::size_t depth;
};

PgaTerm PgaTerm::instr(PrimitiveInstruction u) {
  return PgaTerm(std::make_shared<const Node>(Node{Kind::Instr, std::move(u), {}, {}, 1}));
}

PgaTerm PgaTerm::concat(PgaTerm lhs, PgaTerm rhs) {
  std::size_t d = 1 + std::max(lhs.depth(), rhs.depth());
  return PgaTerm(
      std::make_shared<const Node>(Node{Kind::Concat, {}, std::move(lhs), std::move(rhs), d}));
}

PgaTerm PgaTerm::repeat(PgaTerm body) {
  std::size_t d = 1 + body.depth();
  return PgaTerm(std::make_shared<const Node>(Node{Kind::Repeat, {}, std::move(body), {}, d}));
}

PgaTerm PgaTerm::sequence(const std::vector<PrimitiveInstruction>& instrs) {
  if (instrs.empty()) throw InvariantError("empty instruction list");
  PgaTerm t = instr(instrs.back());
  for (auto it = instrs.rbegin() + 1; it != instrs.rend(); ++it) t = concat(instr(*it), t);
  return t;
}

PgaTerm::Kind PgaTerm::kind() const { return node_->kind; }
const PrimitiveInstruction& PgaTerm::instruction() const { return *node_->instr; }
const PgaTerm& PgaTerm::lhs() const { return *node_->a; }
const PgaTerm& PgaTerm::rhs() const { return *node_->b; }
const PgaTerm& PgaTerm::body() const { return *node_->a; }
std::size_t PgaTerm::depth() const { return node_->depth; }

std::string PgaTerm::str() const {
  switch (kind()) {
    case Kind::Instr: return instruction().str();
    case Kind::Concat: return lhs().str() + ";" + rhs().str();
    case Kind::Repeat:
      if (body().kind() == Kind::Instr) return body().str() + "*";
      return "(" + body().str() + ")*";
  }
  return {};
}

// -- InstructionSeq ------------------------------------------------------------

namespace {

std::size_t minimal_period(const std::vector<PrimitiveInstruction>& p) {
  const std::size_t n = p.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = p[i] == p[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

InstructionSeq InstructionSeq::make(std::vector<PrimitiveInstruction> prefix,
                                    std::vector<PrimitiveInstruction> period) {
  if (prefix.empty() && period.empty())
    throw InvariantError("instruction sequence must be nonempty");
  InstructionSeq s;
  if (!period.empty()) {
    period.erase(period.begin() + static_cast<std::ptrdiff_t>(minimal_period(period)), period.end());
    while (!prefix.empty() && prefix.back() == period.back()) {
      prefix.pop_back();
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
  }
  s.prefix_ = std::move(prefix);
  s.period_ = std::move(period);
  return s;
}

std::optional<PrimitiveInstruction> InstructionSeq::nth(std::size_t i) const {
  if (i == 0) return std::nullopt;
  --i;
  if (i < prefix_.size()) return prefix_[i];
  if (period_.empty()) return std::nullopt;
  return period_[(i - prefix_.size()) % period_.size()];
}

std::string InstructionSeq::str() const { return canonical_term(*this).str(); }

InstructionSeq normalize(std::vector<PrimitiveInstruction> prefix,
                         std::vector<PrimitiveInstruction> period) {
  return InstructionSeq::make(std::move(prefix), std::move(period));
}

InstructionSeq eval(const PgaTerm& t) {
  switch (t.kind()) {
    case PgaTerm::Kind::Instr: return InstructionSeq::make({t.instruction()}, {});
    case PgaTerm::Kind::Concat: {
      InstructionSeq a = eval(t.lhs());
      if (!a.finite()) return a;
      InstructionSeq b = eval(t.rhs());
      std::vector<PrimitiveInstruction> prefix = a.prefix();
      prefix.insert(prefix.end(), b.prefix().begin(), b.prefix().end());
      return InstructionSeq::make(std::move(prefix), b.period());
    }
    case PgaTerm::Kind::Repeat: {
      InstructionSeq a = eval(t.body());
      if (!a.finite()) return a;
      return InstructionSeq::make({}, a.prefix());
    }
  }
  throw InvariantError("unknown term kind");
}

PgaTerm canonical_term(const InstructionSeq& s) {
  if (s.finite()) return PgaTerm::sequence(s.prefix());
  PgaTerm rep = PgaTerm::repeat(PgaTerm::sequence(s.period()));
  if (s.prefix().empty()) return rep;
  // Right-nest the prefix onto the repetition.
  PgaTerm t = rep;
  for (auto it = s.prefix().rbegin(); it != s.prefix().rend(); ++it)
    t = PgaTerm::concat(PgaTerm::instr(*it), t);
  return t;
}

bool term_equal(const PgaTerm& a, const PgaTerm& b) { return eval(a) == eval(b); }

// -- Parsing -------------------------------------------------------------------

namespace {

BasicInstruction read_basic(TextCursor& in) {
  std::string word = in.identifier();
  if (word.empty()) throw in.error("expected basic instruction");
  if (word == "ac" && in.peek() == '(') {
    in.expect('(');
    std::string e1 = in.identifier();
    in.expect(',');
    std::string e2 = in.identifier();
    in.expect(')');
    if (e1.empty() || e2.empty()) throw in.error("malformed alternative choice instruction");
    return BasicInstruction::alt_choice(std::move(e1), std::move(e2));
  }
  auto dot = word.find('.');
  if (dot == std::string::npos) return BasicInstruction::action(word);
  if (dot == 0 || dot + 1 == word.size()) throw in.error("malformed focus.method '" + word + "'");
  return BasicInstruction::focus_method(word.substr(0, dot), word.substr(dot + 1));
}

PgaTerm read_seq(TextCursor& in);

PgaTerm read_atom(TextCursor& in) {
  in.skip_space();
  char c = in.peek();
  if (c == '(') {
    in.expect('(');
    PgaTerm t = read_seq(in);
    in.expect(')');
    return t;
  }
  if (c == '!') {
    in.advance();
    return PgaTerm::instr(PrimitiveInstruction::halt());
  }
  if (c == '#') {
    in.advance();
    return PgaTerm::instr(PrimitiveInstruction::jump(in.natural()));
  }
  if (c == '+') {
    in.advance();
    return PgaTerm::instr(PrimitiveInstruction::pos_test(read_basic(in)));
  }
  if (c == '-') {
    in.advance();
    return PgaTerm::instr(PrimitiveInstruction::neg_test(read_basic(in)));
  }
  return PgaTerm::instr(PrimitiveInstruction::plain(read_basic(in)));
}

PgaTerm read_item(TextCursor& in) {
  PgaTerm t = read_atom(in);
  while (in.skip_space(), in.peek() == '*') {
    in.advance();
    t = PgaTerm::repeat(t);
  }
  return t;
}

PgaTerm read_seq(TextCursor& in) {
  std::vector<PgaTerm> items{read_item(in)};
  while (in.skip_space(), in.peek() == ';') {
    in.advance();
    items.push_back(read_item(in));
  }
  PgaTerm t = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) t = PgaTerm::concat(*it, t);
  return t;
}

}  // namespace

BasicInstruction parse_basic_instruction(std::string_view text) {
  TextCursor in(text);
  in.skip_space();
  try {
    BasicInstruction b = read_basic(in);
    in.expect_end();
    return b;
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

PgaTerm parse_pga(std::string_view text) {
  TextCursor in(text);
  try {
    PgaTerm t = read_seq(in);
    in.expect_end();
    return t;
  } catch (const InvariantError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace isproc
