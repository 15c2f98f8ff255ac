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

#ifndef ISPROC_ERROR_HPP_
#define ISPROC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isproc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A value violates a documented precondition or type invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// State-space exploration exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t size, std::size_t budget)
      : Error("state space exceeds budget: " + std::to_string(size) + " > " +
              std::to_string(budget)),
        size_(size) {}
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

}  // namespace isproc

#endif  // ISPROC_ERROR_HPP_
