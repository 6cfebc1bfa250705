// Copyright 2026 The peakjac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "peakjac/error.hpp"
#include "peakjac/partition.hpp"
#include "support.hpp"

using namespace peakjac;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invariant_violation;
}

}  // namespace

TEST_CASE("sign_of is an exact comparison against zero") {
  CHECK(sign_of(1e-300) == 1);
  CHECK(sign_of(-1e-300) == -1);
  CHECK(sign_of(0.0) == 0);
  CHECK(sign_of(-0.0) == 0);
}

TEST_CASE("sign split sends zero to the nonpositive state") {
  const auto p = StatePartition::sign_split();
  REQUIRE(p.size() == 2);
  CHECK(p.classify(3.0) == 0);
  CHECK(p.classify(0.0) == 1);
  CHECK(p.classify(-0.0) == 1);
  CHECK(p.classify(-2.0) == 1);
  CHECK(p.classify(std::numeric_limits<double>::denorm_min()) == 0);
}

TEST_CASE("financial five-state regimes with tau = 2") {
  const auto p = StatePartition::financial_five_state(2.0);
  CHECK(p.neutral_index() == 0U);
  CHECK(p.classify(8.2) == 1);
  CHECK(p.classify(0.3) == 2);
  CHECK(p.classify(0.0) == 0);
  CHECK(p.classify(-1.5) == 3);
  CHECK(p.classify(-5.1) == 4);
  // boundaries
  CHECK(p.classify(2.0) == 2);
  CHECK(p.classify(-2.0) == 3);
  CHECK(p.classify(std::nextafter(2.0, 3.0)) == 1);
  CHECK(p.classify(std::nextafter(-2.0, -3.0)) == 4);
}

TEST_CASE("neutral band partitions") {
  const auto five = StatePartition::neutral_band_five_state(0.1, 2.0);
  CHECK(five.classify(0.1) == 0);
  CHECK(five.classify(-0.1) == 0);
  CHECK(five.classify(-2.0) == 1);
  CHECK(five.classify(-1.4) == 2);
  CHECK(five.classify(0.18) == 3);
  CHECK(five.classify(2.0) == 3);
  CHECK(five.classify(2.2) == 4);

  const auto three = StatePartition::neutral_band_three_state(0.1);
  CHECK(three.classify(0.3) == 1);
  CHECK(three.classify(0.0) == 0);
  CHECK(three.classify(-1.1) == 2);
}

TEST_CASE("classify rejects non-finite values") {
  const auto p = StatePartition::sign_split();
  CHECK(code_of([&] { (void)p.classify(kInf); }) == ErrorCode::invalid_signal);
  CHECK(code_of([&] { (void)p.classify(std::nan("")); }) == ErrorCode::invalid_signal);
}

TEST_CASE("invalid partitions are rejected") {
  SUBCASE("gap at a shared endpoint") {
    CHECK(code_of([] {
            StatePartition({{"a", -kInf, 0.0, false, false}, {"b", 0.0, kInf, false, false}});
          }) == ErrorCode::invalid_partition);
  }
  SUBCASE("overlap at a shared endpoint") {
    CHECK(code_of([] {
            StatePartition({{"a", -kInf, 0.0, false, true}, {"b", 0.0, kInf, true, false}});
          }) == ErrorCode::invalid_partition);
  }
  SUBCASE("open gap") {
    CHECK(code_of([] {
            StatePartition({{"a", -kInf, -1.0, false, true}, {"b", 1.0, kInf, false, false}});
          }) == ErrorCode::invalid_partition);
  }
  SUBCASE("single state") {
    CHECK(code_of([] { StatePartition({{"all", -kInf, kInf, false, false}}); }) ==
          ErrorCode::invalid_partition);
  }
  SUBCASE("reversed interval") {
    CHECK(code_of([] {
            StatePartition({{"a", 1.0, -1.0, true, true}, {"b", -kInf, kInf, false, false}});
          }) == ErrorCode::invalid_partition);
  }
  SUBCASE("neutral index out of range") {
    CHECK(code_of([] {
            StatePartition({{"a", -kInf, 0.0, false, true}, {"b", 0.0, kInf, false, false}}, 5);
          }) == ErrorCode::invalid_partition);
  }
  SUBCASE("bad thresholds") {
    CHECK(code_of([] { (void)StatePartition::financial_five_state(-1.0); }) == ErrorCode::invalid_argument);
    CHECK(code_of([] { (void)StatePartition::neutral_band_five_state(2.0, 1.0); }) ==
          ErrorCode::invalid_argument);
  }
}

TEST_CASE("partition id ignores names but not bounds") {
  const StatePartition a({{"neg", -kInf, 0.0, false, true}, {"pos", 0.0, kInf, false, false}});
  const StatePartition b({{"down", -kInf, 0.0, false, true}, {"up", 0.0, kInf, false, false}});
  const StatePartition c({{"neg", -kInf, 0.0, false, false}, {"pos", 0.0, kInf, true, false}});
  CHECK(a.id() == b.id());
  CHECK(a.id() != c.id());
}

TEST_CASE("random interval partitions classify exactly one state") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t cuts = gen.size(1, 6);
    std::vector<double> edges;
    for (std::size_t c = 0; c < cuts; ++c) edges.push_back(gen.uniform(-5, 5));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<IntervalState> states;
    double lower = -kInf;
    bool lower_in = false;
    for (double e : edges) {
      const bool closed_right = gen.chance(0.5);
      states.push_back({"s", lower, e, lower_in, closed_right});
      lower = e;
      lower_in = !closed_right;
    }
    states.push_back({"s", lower, kInf, lower_in, false});
    if (states.size() < 2) continue;
    std::shuffle(states.begin(), states.end(), gen.engine());
    const StatePartition p(states);
    for (int probe = 0; probe < 50; ++probe) {
      const double x = gen.chance(0.3) ? edges[gen.size(0, edges.size() - 1)] : gen.uniform(-6, 6);
      const std::size_t k = p.classify(x);
      CHECK(states[k].contains(x));
    }
  }
}

TEST_CASE("angular quadrants") {
  const auto q = AngularPartition::quadrants();
  REQUIRE(q.size() == 4);
  CHECK(q.classify(principal_argument(3, 4)) == 0);
  CHECK(q.classify(principal_argument(-2, 1)) == 1);
  CHECK(q.classify(principal_argument(1, -2)) == 3);
  CHECK(q.classify(principal_argument(-1, -1)) == 2);
  CHECK(q.classify(kPi / 2) == 0);
  CHECK(q.classify(kPi) == 1);
  CHECK(q.classify(-kPi) == 1);
  CHECK(q.classify(0.0) == 3);
  CHECK(q.classify(-kPi / 2) == 2);
  CHECK(code_of([&] { (void)q.classify(4.0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("principal argument puts the negative real axis at +pi") {
  CHECK(principal_argument(-1.0, 0.0) == kPi);
  CHECK(principal_argument(-1.0, -0.0) == kPi);
  CHECK(principal_argument(1.0, 0.0) == 0.0);
}

TEST_CASE("uniform sectors cover the circle") {
  testing::Gen gen(11);
  for (std::size_t k = 1; k <= 12; ++k) {
    const auto u = AngularPartition::uniform(k);
    REQUIRE(u.size() == k);
    for (int probe = 0; probe < 200; ++probe) {
      const double a = gen.uniform(-kPi, kPi);
      const std::size_t s = u.classify(a);
      CHECK(u.sectors()[s].contains(a));
    }
  }
}

TEST_CASE("overlapping sectors are rejected") {
  CHECK(code_of([] {
          AngularPartition({{"a", -kPi, 0.5, false, true}, {"b", 0.0, kPi, false, true}});
        }) == ErrorCode::invalid_partition);
}

TEST_CASE("coarsening maps") {
  const CoarseningMap m(5, {{0}, {1, 2}, {3, 4}}, {"neutral", "loss", "gain"});
  CHECK(m.coarse_count() == 3);
  CHECK(m(0) == 0);
  CHECK(m(2) == 1);
  CHECK(m(4) == 2);
  CHECK(m.names()[2] == "gain");
  CHECK(CoarseningMap::identity(4)(3) == 3);
  CHECK(CoarseningMap::all_to_one(4)(3) == 0);
  CHECK(code_of([] { CoarseningMap(3, {{0, 1}, {1, 2}}); }) == ErrorCode::invalid_grouping);
  CHECK(code_of([] { CoarseningMap(3, {{0, 1}}); }) == ErrorCode::invalid_grouping);
  CHECK(code_of([] { CoarseningMap(3, {{0, 1, 2}, {}}); }) == ErrorCode::invalid_grouping);
  CHECK(code_of([] { CoarseningMap(3, {{0, 1, 5}}); }) == ErrorCode::invalid_grouping);
}
