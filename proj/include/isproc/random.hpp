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

// Seeded generators of random instances for property checks.

#ifndef ISPROC_RANDOM_HPP_
#define ISPROC_RANDOM_HPP_

#include <random>
#include <string>
#include <vector>

#include "isproc/acp.hpp"
#include "isproc/pga.hpp"
#include "isproc/pgld.hpp"
#include "isproc/thread.hpp"

namespace isproc {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

/// Plain, test, jump (offsets 0..4) and halt instructions over `actions`.
PrimitiveInstruction random_primitive(Rng& rng, const std::vector<BasicInstruction>& actions);

/// Closed term of depth at most `max_depth` (at least 1).
PgaTerm random_pga_term(Rng& rng, std::size_t max_depth, const std::vector<BasicInstruction>& actions);

struct ThreadShape {
  std::size_t max_states = 4;
  std::vector<ThreadAction> actions;
  /// Probability that a state is S or D rather than a postconditional.
  double leaf_probability = 0.2;
  /// Whether the root is always a postconditional.
  bool cond_root = true;
};

/// Thread with between 1 and max_states states before trimming.
ThreadSpec random_thread(Rng& rng, const ThreadShape& shape);

/// Up to `max_vars` equations with up to `max_summands` summands each over
/// the atomic actions `actions`.
LinearProcSpec random_linear(Rng& rng, std::size_t max_vars, std::size_t max_summands,
                             const std::vector<std::string>& actions);

/// Program of 1..max_len instructions with jump targets in [0, len+1].
PgldProgram random_pgld(Rng& rng, std::size_t max_len, const std::vector<BasicInstruction>& actions);

/// Convenience pools.
std::vector<BasicInstruction> bare_actions(const std::vector<std::string>& names);
std::vector<ThreadAction> thread_actions(const std::vector<BasicInstruction>& basics, bool with_tau = false);

}  // namespace isproc

#endif  // ISPROC_RANDOM_HPP_
