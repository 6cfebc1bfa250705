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
#include <vector>

#include "peakjac/error.hpp"
#include "peakjac/probabilistic.hpp"
#include "support.hpp"

using namespace peakjac;
using testing::Gen;

TEST_CASE("three-state pair through both routes") {
  const auto p = StatePartition::neutral_band_three_state(0.1);
  const auto r = tv_consistency(Signal({2.0, 0.3, -1.1}), Signal({1.6, 0.0, -0.4}), p);
  CHECK(r.mass_a == doctest::Approx(3.4).epsilon(1e-15));
  CHECK(r.mass_b == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.tv == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r.delta == doctest::Approx(7.0 / 27.0).epsilon(1e-12));
  CHECK(r.j_direct == doctest::Approx(10.0 / 17.0).epsilon(1e-12));
  CHECK(r.d_direct == doctest::Approx(7.0 / 17.0).epsilon(1e-12));
  CHECK(r.residual <= 1e-12);
  CHECK(r.consistent);
  CHECK_FALSE(r.vacuum);
}

TEST_CASE("vacuum pair bypasses delta") {
  const auto p = StatePartition::sign_split();
  const auto r = tv_consistency(Signal({0.0, 0.0}), Signal({0.0, 0.0}), p);
  CHECK(r.vacuum);
  CHECK(r.j_direct == 1.0);
  CHECK(r.consistent);
  const auto one = tv_consistency(Signal({0.0, 0.0}), Signal({1.0, 0.0}), p);
  CHECK_FALSE(one.vacuum);
  CHECK(one.delta == 2.0 * 0.5 / 1.0);
  CHECK(one.j_direct == 0.0);
  CHECK(one.consistent);
}

TEST_CASE("normalization") {
  const auto mu = measure_of(multistate(Signal({2.0, -1.0, 1.0}), StatePartition::sign_split()));
  const auto dist = normalize(mu);
  double total = 0.0;
  for (const auto& a : dist.atoms()) total += a.mass;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  const auto zero = measure_of(multistate(Signal({0.0}), StatePartition::sign_split()));
  CHECK_THROWS_AS(normalize(zero), Error);
  CHECK_THROWS_AS(normalized_discrepancy(zero, zero), Error);
}

TEST_CASE("TV identity holds on random pairs and partitions") {
  Gen gen(51);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = gen.size(1, 24);
    const double eta = gen.uniform(0.0, 0.5);
    const double tau = eta + gen.uniform(0.01, 2.0);
    const StatePartition p = trial % 3 == 0   ? StatePartition::sign_split()
                             : trial % 3 == 1 ? StatePartition::neutral_band_three_state(eta)
                                              : StatePartition::neutral_band_five_state(eta, tau);
    const auto r = tv_consistency(Signal(gen.vec(n)), Signal(gen.vec(n)), p);
    REQUIRE(r.residual <= 1e-12);
    REQUIRE(std::abs(r.d_direct - r.d_via_tv) <= 1e-12);
    REQUIRE(r.consistent);
  }
}

TEST_CASE("pushforward keeps mass and contracts TV") {
  Gen gen(61);
  const auto p = StatePartition::neutral_band_five_state(0.1, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = gen.size(1, 16);
    // Random grouping of the five states.
    std::vector<std::size_t> label(5);
    const std::size_t g = gen.size(1, 5);
    for (auto& l : label) l = gen.size(0, g - 1);
    std::vector<std::vector<std::size_t>> groups(g);
    for (std::size_t k = 0; k < 5; ++k) groups[label[k]].push_back(k);
    std::erase_if(groups, [](const auto& v) { return v.empty(); });
    const CoarseningMap map(5, groups);

    const auto mu = measure_of(multistate(Signal(gen.vec(n)), p));
    const auto nu = measure_of(multistate(Signal(gen.vec(n)), p));
    const auto mu2 = pushforward(mu, map);
    const auto nu2 = pushforward(nu, map);
    REQUIRE(testing::close_rel(mu2.total_mass(), mu.total_mass(), 1e-14, 1e-300));
    REQUIRE(total_variation(mu2, nu2) <= total_variation(mu, nu) + 1e-12);
    const double d = tanimoto(mu.embedding(), nu.embedding()).distance;
    const double d2 = tanimoto(mu2.embedding(), nu2.embedding()).distance;
    REQUIRE(d2 <= d + 1e-12);
  }
}

TEST_CASE("pushforward rejects a grouping of the wrong size") {
  const auto mu = measure_of(multistate(Signal({1.0}), StatePartition::sign_split()));
  CHECK_THROWS_AS(pushforward(mu, CoarseningMap::identity(3)), Error);
}

TEST_CASE("distributions from different partitions are not compared") {
  const auto a = normalize(measure_of(multistate(Signal({1.0}), StatePartition::neutral_band_three_state(0.1))));
  const auto b = normalize(measure_of(multistate(Signal({1.0}), StatePartition::neutral_band_three_state(0.2))));
  CHECK_THROWS_AS(total_variation(a, b), Error);
  CHECK(total_variation(a, a) == 0.0);
}
