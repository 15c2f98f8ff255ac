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

#include <doctest.h>

#include "isproc/error.hpp"
#include "isproc/suite.hpp"
#include "isproc/timing.hpp"

using namespace isproc;

namespace {

Metrics sim(TimedProtocol p, std::size_t maxlen, std::uint64_t e, std::uint64_t l, std::size_t n = 200) {
  SimOptions o;
  o.protocol = p;
  o.maxlen = maxlen;
  o.timing = {e, l};
  return simulate_timed(straight_line(n), o);
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(Rational(10, 14) == Rational(5, 7));
  CHECK(Rational(10, 14).str() == "5/7");
  CHECK(Rational(0, 3).str() == "0/1");
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(2, 3) <= Rational(4, 6));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("pipeline oracle") {
  CHECK(pipeline_oracle(4, 5, 1, 0) == std::vector<std::uint64_t>{1, 8, 15, 22});
  CHECK(pipeline_oracle(4, 5, 1, 1) == std::vector<std::uint64_t>{1, 6, 11, 16});
  CHECK(pipeline_oracle(3, 5, 0, 0) == std::vector<std::uint64_t>{0, 5, 10});
}

TEST_CASE("simple protocol utilization is E/(E+2L)") {
  for (std::uint64_t e : {5, 10})
    for (std::uint64_t l : {1, 2}) {
      Metrics m = sim(TimedProtocol::Simple, 1, e, l);
      CHECK(m.utilization == Rational(static_cast<std::int64_t>(e), static_cast<std::int64_t>(e + 2 * l)));
      CHECK(m.starts == pipeline_oracle(200, e, l, 0));
      CHECK(m.idle_gaps.size() == 1);
      CHECK(m.idle_gaps.begin()->first == 2 * l);
      CHECK(m.terminated);
    }
}

TEST_CASE("run-ahead protocol keeps the execution unit busy") {
  for (std::uint64_t e : {5, 10})
    for (std::uint64_t l : {1, 2}) {
      std::size_t maxlen = (2 * l + e - 1) / e + 1;
      Metrics m = sim(TimedProtocol::RunAhead, maxlen, e, l);
      CHECK(m.utilization == Rational(1));
      CHECK(m.idle_gaps.empty());
      CHECK(m.starts == pipeline_oracle(200, e, l, maxlen));
    }
}

TEST_CASE("zero latency gives full utilization") {
  CHECK(sim(TimedProtocol::Simple, 1, 5, 0).utilization == Rational(1));
  CHECK(sim(TimedProtocol::RunAhead, 1, 5, 0).utilization == Rational(1));
}

TEST_CASE("utilization does not decrease with depth") {
  for (std::uint64_t l : {1, 3, 7}) {
    Rational prev = sim(TimedProtocol::Simple, 1, 4, l).utilization;
    for (std::size_t maxlen = 1; maxlen <= 6; ++maxlen) {
      Rational u = sim(TimedProtocol::RunAhead, maxlen, 4, l).utilization;
      CHECK(prev <= u);
      CHECK(u <= Rational(1));
      prev = u;
    }
  }
}

TEST_CASE("starts match the oracle for many timings") {
  for (std::uint64_t e = 1; e <= 6; ++e)
    for (std::uint64_t l = 0; l <= 5; ++l)
      for (std::size_t maxlen = 1; maxlen <= 4; ++maxlen)
        CHECK(sim(TimedProtocol::RunAhead, maxlen, e, l, 40).starts == pipeline_oracle(40, e, l, maxlen));
}

TEST_CASE("branching threads follow the replies") {
  SimOptions o;
  o.protocol = TimedProtocol::RunAhead;
  o.maxlen = 2;
  o.timing = {3, 2};
  o.replies.fixed = {true, false, false};
  Metrics m = simulate_timed(parse_thread("x = <a> y | s\ny = <b> x | x\ns = S"), o);
  CHECK(m.terminated);
  CHECK(m.executed == 3);
}

TEST_CASE("metrics record") {
  SimOptions o;
  o.protocol = TimedProtocol::Simple;
  o.timing = {5, 1};
  CHECK(export_metrics(simulate_timed(straight_line(10), o)) ==
        "metrics protocol=simple maxlen=1 exec=5 latency=1 executed=10 messages=11 elapsed=56 busy=40 "
        "utilization=5/7 terminated=true\nidle_gap length=2 count=8\n");
}

TEST_CASE("horizon") {
  SimOptions o;
  o.timing = {5, 1};
  o.horizon = 3;
  CHECK_THROWS_AS(simulate_timed(parse_thread("x = <a> x | x"), o), Error);
}
