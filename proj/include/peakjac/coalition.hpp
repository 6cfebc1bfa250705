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

/*
 * Coalition budgets over m embedded signals.
 *
 * Cumulative intersection of a nonempty coalition S:
 *
 *   N(S) = sum_k sum_i min_{j in S} psi(A_j)[i,k]
 *
 * Exclusive budgets come from Moebius inversion on the Boolean lattice,
 *
 *   N~(S) = sum_{T >= S} (-1)^{|T|-|S|} N(T),
 *
 * and close exactly: ||A_j||_1 = sum_{S containing j} N~(S).
 *
 * The full table costs O(2^m nK); `all` is capped at 20 signals unless
 * forced (hard ceiling 30). Low-order tables (|S| <= r) and explicit lists
 * accept up to 64 signals but cannot be inverted.
 */

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "peakjac/embedding.hpp"
#include "peakjac/partition.hpp"

namespace peakjac {

/// Nonempty subset of [m] as a bitmask; bit j is signal j (0-based).
class CoalitionId {
 public:
  explicit CoalitionId(std::uint64_t mask);

  /// From 0-based member indices.
  static CoalitionId of(std::initializer_list<std::size_t> members);
  static CoalitionId of(std::span<const std::size_t> members);

  std::uint64_t mask() const noexcept { return mask_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool contains(std::size_t j) const noexcept { return j < 64 && (mask_ >> j & 1U) != 0; }
  std::vector<std::size_t> members() const;

  /// Sorted 1-based member list, e.g. "1,3".
  std::string label() const;

  friend bool operator==(CoalitionId, CoalitionId) = default;

 private:
  std::uint64_t mask_;
};

/// Coalition -> value map. Either complete (every nonempty subset of [m])
/// or a sparse selection.
class CoalitionTable {
 public:
  static CoalitionTable complete(std::size_t m);
  static CoalitionTable selection(std::size_t m, std::vector<std::uint64_t> masks);

  std::size_t signal_count() const noexcept { return m_; }
  bool is_complete() const noexcept { return complete_; }
  std::size_t size() const noexcept;

  bool contains(CoalitionId id) const noexcept;
  /// Throws Error(missing_coalition).
  double at(CoalitionId id) const;
  void set(CoalitionId id, double value);

  /// Entries ordered by coalition size, then lexicographically by members.
  std::vector<std::pair<CoalitionId, double>> entries() const;

 private:
  CoalitionTable() = default;
  std::size_t slot(std::uint64_t mask) const;

  std::size_t m_ = 0;
  bool complete_ = false;
  std::vector<std::uint64_t> masks_;  // sparse only, sorted
  std::vector<double> values_;
};

struct CoalitionSelection {
  enum class Mode { all, up_to_order, explicit_list };

  Mode mode = Mode::all;
  std::size_t max_order = 0;
  std::vector<CoalitionId> coalitions;

  static CoalitionSelection all() { return {}; }
  static CoalitionSelection up_to_order(std::size_t r) { return {Mode::up_to_order, r, {}}; }
  static CoalitionSelection only(std::vector<CoalitionId> ids) { return {Mode::explicit_list, 0, std::move(ids)}; }
};

inline constexpr std::size_t kDefaultCoalitionCap = 20;
inline constexpr std::size_t kHardCoalitionCap = 30;

struct CoalitionOptions {
  std::size_t max_signals = kDefaultCoalitionCap;
  bool force = false;  // lift max_signals up to kHardCoalitionCap
};

CoalitionTable cumulative_intersections(std::span<const MassEmbedding> embeddings,
                                        const CoalitionSelection& which = CoalitionSelection::all(),
                                        const CoalitionOptions& options = {});

/// Exclusive budgets from a complete cumulative table.
CoalitionTable mobius_invert(const CoalitionTable& cumulative);

/// Cumulative intersections split by coarse state group. Minima are taken
/// per atom first; group totals are sums of those minima.
struct GroupedIntersections {
  std::vector<std::string> group_names;
  std::vector<CoalitionTable> per_group;
  CoalitionTable total;
};

GroupedIntersections aggregate_post_intersection(std::span<const MassEmbedding> embeddings,
                                                 const CoarseningMap& groups,
                                                 const CoalitionSelection& which = CoalitionSelection::all(),
                                                 const CoalitionOptions& options = {});

/// Closure tolerance, relative to each signal's L1 norm.
inline constexpr double kClosureTolerance = 1e-9;
/// Exclusive budgets may dip below zero by this much times max N(S).
inline constexpr double kNonnegativeSlack = 1e-9;
/// Human-readable output prints |N~(S)| below this as 0.
inline constexpr double kDisplayZero = 1e-12;

struct GroupBudget {
  std::string name;
  CoalitionTable cumulative;
  CoalitionTable exclusive;
};

struct CoalitionReport {
  std::size_t m = 0;
  std::vector<std::string> signal_ids;
  std::vector<double> norms;
  CoalitionTable cumulative = CoalitionTable::complete(1);
  CoalitionTable exclusive = CoalitionTable::complete(1);
  std::vector<double> closure_residuals;  // ||A_j||_1 - sum_{S containing j} N~(S)
  double min_exclusive = 0.0;
  bool closure_ok = true;
  bool nonnegative_ok = true;
  std::vector<GroupBudget> groups;  // empty unless a grouping was requested

  bool ok() const noexcept { return closure_ok && nonnegative_ok; }
};

struct BudgetOptions {
  CoalitionOptions coalitions;
  std::optional<CoarseningMap> groups;
};

CoalitionReport budget_report(std::span<const MassEmbedding> embeddings, const BudgetOptions& options = {},
                              std::vector<std::string> ids = {});

CoalitionReport budget_report(std::span<const Signal> signals, const StatePartition& partition,
                              const BudgetOptions& options = {});

struct CoherenceProfile {
  double grand_intersection = 0.0;  // N(S_all)
  double grand_union = 0.0;         // sum of per-atom maxima
  double grand_similarity = 1.0;
  double grand_distance = 0.0;
  std::vector<double> per_index_incoherence;  // M_i
  std::vector<std::size_t> top_indices;       // 0-based, by M_i descending
};

/// Grand-coalition coherence in one O(mnK) pass. Requires m >= 2.
CoherenceProfile coherence(std::span<const MassEmbedding> embeddings, std::size_t top_k = 10);

}  // namespace peakjac
