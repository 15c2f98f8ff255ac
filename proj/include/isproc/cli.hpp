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

// Command-line front end shared by the executable and the tests.

#ifndef ISPROC_CLI_HPP_
#define ISPROC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace isproc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args[0] is the program name. Text meant for the user
/// goes to `out`, diagnostics to `err`. "-" as an input path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace isproc::cli

#endif  // ISPROC_CLI_HPP_
