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

#include "isproc/random.hpp"

#include "isproc/error.hpp"

namespace isproc {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  if (v.empty()) throw InvariantError("cannot pick from an empty pool");
  return v[uniform(rng, 0, v.size() - 1)];
}

}  // namespace

PrimitiveInstruction random_primitive(Rng& rng, const std::vector<BasicInstruction>& actions) {
  switch (uniform(rng, 0, 9)) {
    case 0:
    case 1:
    case 2: return PrimitiveInstruction::plain(pick(rng, actions));
    case 3:
    case 4: return PrimitiveInstruction::pos_test(pick(rng, actions));
    case 5: return PrimitiveInstruction::neg_test(pick(rng, actions));
    case 6:
    case 7: return PrimitiveInstruction::jump(uniform(rng, 0, 4));
    default: return PrimitiveInstruction::halt();
  }
}

PgaTerm random_pga_term(Rng& rng, std::size_t max_depth, const std::vector<BasicInstruction>& actions) {
  if (max_depth <= 1 || coin(rng, 0.25)) return PgaTerm::instr(random_primitive(rng, actions));
  if (coin(rng, 0.3)) return PgaTerm::repeat(random_pga_term(rng, max_depth - 1, actions));
  return PgaTerm::concat(random_pga_term(rng, max_depth - 1, actions),
                         random_pga_term(rng, max_depth - 1, actions));
}

ThreadSpec random_thread(Rng& rng, const ThreadShape& shape) {
  const std::size_t n = uniform(rng, 1, std::max<std::size_t>(shape.max_states, 1));
  std::vector<ThreadRhs> states;
  for (std::size_t q = 0; q < n; ++q) {
    bool leaf = (q > 0 || !shape.cond_root || n == 1) && coin(rng, shape.leaf_probability);
    if (n == 1 && shape.cond_root) leaf = false;
    if (leaf) {
      states.push_back(coin(rng, 0.5) ? ThreadRhs::stop() : ThreadRhs::dead());
    } else {
      states.push_back(ThreadRhs::cond(pick(rng, shape.actions), uniform(rng, 0, n - 1), uniform(rng, 0, n - 1)));
    }
  }
  return ThreadSpec::make(states, 0);
}

LinearProcSpec random_linear(Rng& rng, std::size_t max_vars, std::size_t max_summands,
                             const std::vector<std::string>& actions) {
  const std::size_t n = uniform(rng, 1, max_vars);
  std::vector<LinearProcSpec::Equation> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    LinearProcSpec::Equation e;
    e.var = "X" + std::to_string(i);
    const std::size_t k = uniform(rng, 1, max_summands);
    for (std::size_t s = 0; s < k; ++s) {
      ActionLabel a = ActionLabel::atomic(pick(rng, actions));
      switch (uniform(rng, 0, 5)) {
        case 0: e.summands.push_back(Summand::only(a)); break;
        case 1:
          if (coin(rng, 0.3)) {
            e.summands.push_back(Summand::deadlock());
            break;
          }
          [[fallthrough]];
        default: e.summands.push_back(Summand::step(a, "X" + std::to_string(uniform(rng, 0, n - 1)))); break;
      }
    }
    eqs.push_back(std::move(e));
  }
  return LinearProcSpec(std::move(eqs));
}

PgldProgram random_pgld(Rng& rng, std::size_t max_len, const std::vector<BasicInstruction>& actions) {
  const std::size_t n = uniform(rng, 1, max_len);
  std::vector<PgldInstruction> code;
  for (std::size_t j = 0; j < n; ++j) {
    switch (uniform(rng, 0, 5)) {
      case 0:
      case 1: code.push_back(PgldInstruction::plain(pick(rng, actions))); break;
      case 2: code.push_back(PgldInstruction::pos_test(pick(rng, actions))); break;
      case 3: code.push_back(PgldInstruction::neg_test(pick(rng, actions))); break;
      default: code.push_back(PgldInstruction::jump(uniform(rng, 0, n + 1))); break;
    }
  }
  return PgldProgram(std::move(code));
}

std::vector<BasicInstruction> bare_actions(const std::vector<std::string>& names) {
  std::vector<BasicInstruction> out;
  for (const auto& s : names) out.push_back(parse_basic_instruction(s));
  return out;
}

std::vector<ThreadAction> thread_actions(const std::vector<BasicInstruction>& basics, bool with_tau) {
  std::vector<ThreadAction> out;
  for (const auto& b : basics) out.push_back(ThreadAction::basic(b));
  if (with_tau) out.push_back(ThreadAction::tau());
  return out;
}

}  // namespace isproc
