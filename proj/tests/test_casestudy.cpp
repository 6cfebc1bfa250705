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
#include <numbers>

#include "peakjac/casestudy.hpp"
#include "peakjac/error.hpp"
#include "support.hpp"

using namespace peakjac;

TEST_CASE("quarter-period shift") {
  const auto pair = phase_shift_pair(400, 1.0, 0.25);
  REQUIRE(pair.t.size() == 400);
  CHECK(pair.t[0] == 0.0);
  CHECK(pair.t[399] < 1.0);
  const auto s = summarize(pair);
  // Continuous quarter shift: J = (sqrt 2 - 1) / (sqrt 2 + 1) = 3 - 2 sqrt 2.
  CHECK(std::abs(s.similarity - (3.0 - 2.0 * std::sqrt(2.0))) < 1e-3);
  CHECK(std::abs(s.pearson) < 1e-12);
  CHECK(std::abs(s.pearson - s.cos_phase) < 0.01);
}

TEST_CASE("zero shift is identical") {
  const auto s = summarize(phase_shift_pair(64, 2.0, 0.0));
  CHECK(s.similarity == 1.0);
  CHECK(s.pearson == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("half-period shift is fully opposed") {
  const auto s = summarize(phase_shift_pair(400, 1.0, 0.5));
  CHECK(s.similarity < 1e-12);
  CHECK(s.pearson == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson matches cos of the phase for arbitrary shifts") {
  testing::Gen gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const double shift = gen.uniform(0.0, 1.0);
    const auto s = summarize(phase_shift_pair(400, 1.0, shift));
    CHECK(std::abs(s.pearson - s.cos_phase) < 0.01);
  }
}

TEST_CASE("envelopes sum to the pairwise totals") {
  const auto pair = phase_shift_pair(400, 3.0, 0.5);
  const auto env = overlap_envelope(pair.a, pair.b);
  double n = 0, u = 0;
  for (std::size_t i = 0; i < env.intersection.size(); ++i) {
    CHECK(env.intersection[i] <= env.union_mass[i]);
    n += env.intersection[i];
    u += env.union_mass[i];
  }
  const auto s = summarize(pair);
  CHECK(n / u == doctest::Approx(s.similarity).epsilon(1e-12));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(phase_shift_pair(1, 1.0, 0.0), Error);
  CHECK_THROWS_AS(phase_shift_pair(10, 0.0, 0.0), Error);
  CHECK_THROWS_AS(phase_shift_pair(10, 1.0, std::nan("")), Error);
  const std::vector<double> c{1, 1, 1};
  CHECK_THROWS_AS(pearson(c, c), Error);
}
