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

// Acceptance batteries. Each criterion runs a seeded family of cases and
// reports pass/fail together with per-case records.

#ifndef ISPROC_SUITE_HPP_
#define ISPROC_SUITE_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace isproc {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 1000000;
  /// Worker threads for independent cases; 0 picks the hardware count.
  std::size_t jobs = 0;
  /// Also explore the repaired run-ahead protocol for reference figures.
  bool repaired_reference = true;
};

struct CaseResult {
  std::string id;
  bool pass = false;
  std::size_t states = 0;
  double millis = 0;
  std::string note;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::vector<CaseResult> cases;
  /// Informational lines that do not affect the verdict.
  std::vector<std::string> info;

  std::size_t failures() const;
};

inline constexpr int kCriteria = 10;

/// Throws InvariantError for numbers outside [1, kCriteria].
CriterionResult run_criterion(int number, const SuiteOptions& opts);

/// "criterion N PASS|FAIL title=... cases=... failures=... seconds=..."
std::string summary_line(const CriterionResult& r);
/// Summary, info records and, when requested, one record per case.
std::string format_result(const CriterionResult& r, bool with_cases);

/// Start times of a straight-line run of n instructions, from the closed
/// recurrence of the pipeline: instruction j reaches the execution unit
/// once the reply of instruction j-depth-1 is back at the generator
/// (depth 0 is the simple protocol).
std::vector<std::uint64_t> pipeline_oracle(std::size_t n, std::uint64_t exec, std::uint64_t latency,
                                           std::size_t depth);

}  // namespace isproc

#endif  // ISPROC_SUITE_HPP_
