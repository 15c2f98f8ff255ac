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

// Finite-state services and the thread-level use operator.
//
// Service description format (whitespace-insensitive):
//   service NAME states {S1,S2,...} initial S1
//   on METHOD S1 -> S2 reply T|F|B
//   ...
// Method/state pairs without an `on` line go to an implicit blocked state.
// `br T`, `br F` and `br B` denote Boolean registers.

#ifndef ISPROC_SERVICES_HPP_
#define ISPROC_SERVICES_HPP_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isproc/thread.hpp"

namespace isproc {

enum class Reply : std::uint8_t { True, False, Blocked };

/// "T", "F" or "B".
std::string_view reply_str(Reply r);
Reply parse_reply(std::string_view s);

/// A service machine together with its current state. Copies share the
/// machine; derive() yields a new instance.
class Service {
 public:
  struct Step {
    std::size_t next;
    Reply reply;
  };

  /// `states` names the states; `steps` maps (method, state) to its effect
  /// and yield; everything else enters the blocked state `blocked`, which
  /// must be one of `states`. Throws InvariantError when the blocked
  /// absorption condition fails.
  static Service make(std::string name, std::vector<std::string> states,
                      std::map<std::pair<std::string, std::size_t>, Step> steps,
                      std::size_t blocked, std::size_t initial);

  /// Boolean register whose contents are `initial` (Blocked is the sink).
  static Service boolean_register(Reply initial);

  const std::string& name() const;
  std::size_t state() const { return current_; }
  const std::string& state_name() const;
  std::size_t num_states() const;
  /// Methods with at least one explicit `on` line.
  const std::vector<std::string>& methods() const;

  Step step_at(std::string_view method, std::size_t state) const;
  Reply reply(std::string_view method) const { return step_at(method, current_).reply; }
  Service derive(std::string_view method) const { return with_state(step_at(method, current_).next); }
  Service with_state(std::size_t s) const;

  std::string str() const;

 private:
  struct Machine;
  Service(std::shared_ptr<const Machine> m, std::size_t s) : m_(std::move(m)), current_(s) {}
  std::shared_ptr<const Machine> m_;
  std::size_t current_;
};

Service parse_service(std::string_view text);

/// Routes every f.m action of `spec` through `h`, turning it into tau.
ThreadSpec use(const ThreadSpec& spec, const std::string& focus, const Service& h);

/// use(...use(spec, f1, h1)..., fk, hk). Throws InvariantError on duplicate
/// foci.
ThreadSpec use_chain(const ThreadSpec& spec, const std::vector<std::pair<std::string, Service>>& chain);

}  // namespace isproc

#endif  // ISPROC_SERVICES_HPP_
