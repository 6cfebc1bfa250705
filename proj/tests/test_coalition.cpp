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

#include "peakjac/coalition.hpp"
#include "peakjac/error.hpp"
#include "support.hpp"

using namespace peakjac;
using testing::Gen;

namespace {

using Dense = std::vector<std::vector<std::vector<double>>>;

std::vector<Signal> trio() {
  return {Signal({8.2, 0.3, -0.05, -5.1}, "A1"), Signal({3.1, 0.18, -2.6, -0.07}, "A2"),
          Signal({2.2, 0.0, -1.4, -3.0}, "A3")};
}

Dense to_dense(const std::vector<MassEmbedding>& es) {
  Dense out;
  for (const auto& e : es) {
    const auto flat = e.dense();
    std::vector<std::vector<double>> rows(e.rows(), std::vector<double>(e.states()));
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t k = 0; k < e.states(); ++k) rows[i][k] = flat[i * e.states() + k];
    }
    out.push_back(std::move(rows));
  }
  return out;
}

std::vector<MassEmbedding> random_batch(Gen& gen, std::size_t m, std::size_t n, const StatePartition& p) {
  std::vector<MassEmbedding> out;
  // Correlated signals so that higher-order coalitions are not all empty.
  const auto base = gen.vec(n);
  for (std::size_t j = 0; j < m; ++j) {
    auto x = base;
    for (auto& v : x) v = gen.chance(0.6) ? v * gen.uniform(0.5, 1.5) : gen.value();
    out.push_back(multistate(Signal(x), p));
  }
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invariant_violation;
}

}  // namespace

TEST_CASE("coalition ids") {
  const auto s = CoalitionId::of({0, 2});
  CHECK(s.label() == "1,3");
  CHECK(s.order() == 2);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.members() == std::vector<std::size_t>{0, 2});
  CHECK(code_of([] { (void)CoalitionId(0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("coalition table ordering and lookup") {
  auto t = CoalitionTable::complete(3);
  CHECK(t.size() == 7);
  const auto e = t.entries();
  std::vector<std::string> labels;
  for (const auto& [id, v] : e) labels.push_back(id.label());
  CHECK(labels == std::vector<std::string>{"1", "2", "3", "1,2", "1,3", "2,3", "1,2,3"});
  auto sparse = CoalitionTable::selection(3, {CoalitionId::of({0, 1}).mask()});
  CHECK(sparse.contains(CoalitionId::of({0, 1})));
  CHECK(code_of([&] { (void)sparse.at(CoalitionId::of({0})); }) == ErrorCode::missing_coalition);
}

TEST_CASE("worked three-signal budget") {
  const auto p = StatePartition::neutral_band_five_state(0.1, 2.0);
  const auto signals = trio();
  const auto report = budget_report(signals, p);
  const auto N = [&](std::initializer_list<std::size_t> s) { return report.cumulative.at(CoalitionId::of(s)); };
  const auto X = [&](std::initializer_list<std::size_t> s) { return report.exclusive.at(CoalitionId::of(s)); };
  CHECK(N({0, 1}) == doctest::Approx(3.28).epsilon(1e-12));
  CHECK(N({0, 1, 2}) == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(X({0, 1}) == doctest::Approx(1.08).epsilon(1e-12));
  CHECK(X({0, 1, 2}) == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(report.norms[0] == doctest::Approx(13.65).epsilon(1e-12));
  CHECK(report.norms[1] == doctest::Approx(5.95).epsilon(1e-12));
  CHECK(report.norms[2] == doctest::Approx(6.6).epsilon(1e-12));
  // Hand-evaluated remaining exclusive budgets.
  CHECK(X({0}) == doctest::Approx(7.37).epsilon(1e-12));
  CHECK(X({1}) == doctest::Approx(2.67).epsilon(1e-12));
  CHECK(X({2}) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(X({0, 2}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(X({1, 2})) <= 1e-12);
  for (double r : report.closure_residuals) CHECK(std::abs(r) <= 1e-12);
  CHECK(report.ok());
  CHECK(report.signal_ids == std::vector<std::string>{"A1", "A2", "A3"});
}

TEST_CASE("cumulative and exclusive tables match brute-force oracles") {
  Gen gen(17);
  const auto p = StatePartition::neutral_band_five_state(0.1, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = gen.size(1, 7), n = gen.size(1, 10);
    const auto batch = random_batch(gen, m, n, p);
    const auto dense = to_dense(batch);
    const auto oracle_n = testing::oracle_cumulative(dense);
    const auto oracle_x = testing::oracle_mobius(oracle_n, m);
    const auto layers = testing::oracle_layers(dense);
    const auto cumulative = cumulative_intersections(batch);
    const auto exclusive = mobius_invert(cumulative);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      const CoalitionId id(mask);
      REQUIRE(testing::close_rel(cumulative.at(id), oracle_n[mask], 1e-12, 1e-12));
      REQUIRE(std::abs(exclusive.at(id) - oracle_x[mask]) <= 1e-9);
      REQUIRE(std::abs(exclusive.at(id) - layers[mask]) <= 1e-9);
      REQUIRE(exclusive.at(id) >= -1e-9);
    }
  }
}

TEST_CASE("budget closure on random batches") {
  Gen gen(23);
  const auto p = StatePartition::financial_five_state(0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto batch = random_batch(gen, gen.size(1, 8), gen.size(1, 12), p);
    const auto report = budget_report(batch);
    REQUIRE(report.ok());
    for (std::size_t j = 0; j < report.m; ++j) {
      REQUIRE(std::abs(report.closure_residuals[j]) <= 1e-9 * std::max(1.0, report.norms[j]));
    }
  }
}

TEST_CASE("low-order and explicit selections agree with the full table") {
  Gen gen(29);
  const auto p = StatePartition::neutral_band_three_state(0.2);
  const auto batch = random_batch(gen, 6, 8, p);
  const auto full = cumulative_intersections(batch);
  const auto low = cumulative_intersections(batch, CoalitionSelection::up_to_order(2));
  CHECK(low.size() == 6 + 15);
  for (const auto& [id, v] : low.entries()) CHECK(v == full.at(id));
  const std::vector<CoalitionId> picks{CoalitionId::of({0, 3, 5}), CoalitionId::of({1})};
  const auto listed = cumulative_intersections(batch, CoalitionSelection::only(picks));
  CHECK(listed.size() == 2);
  for (const auto& id : picks) CHECK(listed.at(id) == doctest::Approx(full.at(id)).epsilon(1e-15));
  CHECK(code_of([&] { (void)mobius_invert(low); }) == ErrorCode::missing_coalition);
}

TEST_CASE("coalition caps") {
  const auto p = StatePartition::sign_split();
  std::vector<MassEmbedding> many;
  for (int j = 0; j < 21; ++j) many.push_back(multistate(Signal({1.0, -1.0}), p));
  CHECK(code_of([&] { (void)cumulative_intersections(many); }) == ErrorCode::coalition_cap);
  CoalitionOptions small;
  small.max_signals = 4;
  std::vector<MassEmbedding> five(many.begin(), many.begin() + 5);
  CHECK(code_of([&] { (void)cumulative_intersections(five, CoalitionSelection::all(), small); }) ==
        ErrorCode::coalition_cap);
  small.force = true;
  CHECK(cumulative_intersections(five, CoalitionSelection::all(), small).size() == 31);
  // Low-order tables are not subject to the exponential cap.
  CHECK(cumulative_intersections(many, CoalitionSelection::up_to_order(2)).size() == 21 + 210);
}

TEST_CASE("post-intersection aggregation on the worked example") {
  const auto p = StatePartition::neutral_band_five_state(0.1, 2.0);
  std::vector<MassEmbedding> batch;
  for (const auto& s : trio()) batch.push_back(multistate(s, p));
  const CoarseningMap groups(5, {{3, 4}, {1, 2}, {0}}, {"gain", "loss", "neutral"});
  const auto g = aggregate_post_intersection(batch, groups);
  const auto s12 = CoalitionId::of({0, 1});
  CHECK(g.per_group[0].at(s12) == doctest::Approx(3.28).epsilon(1e-12));
  CHECK(g.per_group[1].at(s12) == 0.0);
  CHECK(g.per_group[2].at(s12) == 0.0);
  const auto fine = cumulative_intersections(batch);
  for (const auto& [id, v] : fine.entries()) {
    CHECK(g.per_group[2].at(id) + g.per_group[1].at(id) + g.per_group[0].at(id) == v);
    CHECK(g.per_group[0].at(id) + g.per_group[1].at(id) + g.per_group[2].at(id) == doctest::Approx(v).epsilon(1e-15));
    CHECK(g.total.at(id) == v);
  }
}

TEST_CASE("grouped budgets close per group") {
  Gen gen(41);
  const auto p = StatePartition::neutral_band_five_state(0.1, 1.0);
  const CoarseningMap groups(5, {{0}, {1, 2}, {3, 4}});
  for (int trial = 0; trial < 100; ++trial) {
    const auto batch = random_batch(gen, gen.size(2, 6), gen.size(1, 8), p);
    BudgetOptions options;
    options.groups = groups;
    const auto report = budget_report(batch, options);
    REQUIRE(report.ok());
    REQUIRE(report.groups.size() == 3);
    for (const auto& [id, v] : report.cumulative.entries()) {
      double sum = 0.0;
      for (const auto& g : report.groups) sum += g.cumulative.at(id);
      REQUIRE(std::abs(sum - v) <= 1e-12 * std::max(1.0, v));
    }
  }
}

TEST_CASE("aggregate-then-min overstates shared gains") {
  const auto p = StatePartition::sign_split();
  const Signal a({3.0, 2.0, -1.0, -1.0}), b({-1.0, -1.0, 2.0, 3.0});
  std::vector<MassEmbedding> batch{multistate(a, p), multistate(b, p)};
  const CoarseningMap groups(2, {{0}, {1}}, {"gain", "loss"});
  const auto g = aggregate_post_intersection(batch, groups);
  const double correct = g.per_group[0].at(CoalitionId::of({0, 1}));
  const double naive = std::min(5.0, 5.0);
  CHECK(correct == 0.0);
  CHECK(naive - correct >= 0.5);
}

TEST_CASE("coherence profile") {
  const auto p = StatePartition::neutral_band_five_state(0.1, 2.0);
  std::vector<MassEmbedding> batch;
  for (const auto& s : trio()) batch.push_back(multistate(s, p));
  const auto c = coherence(batch, 2);
  CHECK(c.grand_intersection == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(c.grand_union == doctest::Approx(17.72).epsilon(1e-12));
  CHECK(c.grand_similarity == doctest::Approx(2.2 / 17.72).epsilon(1e-12));
  // Per-coordinate oracle: sum over states of (max - min), min only when all occupy the atom.
  const auto dense = to_dense(batch);
  for (std::size_t i = 0; i < 4; ++i) {
    double expected = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
      double lo = INFINITY, hi = 0.0;
      for (const auto& d : dense) {
        lo = std::min(lo, d[i][k]);
        hi = std::max(hi, d[i][k]);
      }
      expected += hi - lo;
    }
    CHECK(c.per_index_incoherence[i] == doctest::Approx(expected).epsilon(1e-12));
  }
  REQUIRE(c.top_indices.size() == 2);
  CHECK(c.top_indices[0] == 0);
  CHECK(c.top_indices[1] == 3);
  CHECK(code_of([&] { (void)coherence(std::span(batch).first(1)); }) == ErrorCode::invalid_argument);
}
