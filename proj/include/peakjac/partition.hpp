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
 * State partitions of the real line and of the angular domain (-pi, pi].
 *
 * A StatePartition is an ordered list of K intervals B_0..B_{K-1} that are
 * pairwise disjoint and cover R. Every finite value belongs to exactly one
 * state; classify() returns its index. Interval endpoints carry explicit
 * inclusion flags, so tolerance bands are modelled as ordinary (neutral)
 * states and sign_of() stays an exact comparison against zero.
 *
 * Validation enumerates every finite endpoint, the midpoints between
 * consecutive endpoints, and probes beyond the extremes. Membership is
 * constant on each open gap between endpoints, so this probe set is
 * exhaustive for interval partitions.
 *
 * AngularPartition is the same construction on (-pi, pi]. Principal
 * arguments are canonicalised so the negative real axis maps to +pi.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peakjac {

/// Exact sign: +1, 0 or -1.
int sign_of(double value) noexcept;

struct IntervalState {
  std::string name;
  double lower;  // -inf allowed
  double upper;  // +inf allowed
  bool lower_inclusive = false;
  bool upper_inclusive = false;

  bool contains(double value) const noexcept;
};

class StatePartition {
 public:
  /// Validates and throws Error(invalid_partition) on overlap, gaps, K < 2,
  /// a malformed interval or an out-of-range neutral index.
  explicit StatePartition(std::vector<IntervalState> states,
                          std::optional<std::size_t> neutral = std::nullopt);

  /// Two states: B_0 = (0, inf) "positive", B_1 = (-inf, 0] "nonpositive".
  static StatePartition sign_split();

  /// Five financial regimes around an exact-zero neutral state:
  /// {0}, (tau, inf), (0, tau], [-tau, 0), (-inf, -tau).
  static StatePartition financial_five_state(double tau);

  /// Neutral band [-eta, eta] plus large/small loss and gain:
  /// [-eta, eta], (-inf, -tau], (-tau, -eta), (eta, tau], (tau, inf).
  static StatePartition neutral_band_five_state(double eta, double tau);

  /// Neutral band [-eta, eta], positive (eta, inf), negative (-inf, -eta).
  static StatePartition neutral_band_three_state(double eta);

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<IntervalState>& states() const noexcept { return states_; }
  const IntervalState& state(std::size_t k) const { return states_.at(k); }
  std::optional<std::size_t> neutral_index() const noexcept { return neutral_; }

  /// Provenance tag derived from the interval bounds and flags (names are
  /// not part of the identity).
  const std::string& id() const noexcept { return id_; }

  /// Index of the unique state containing `value`. Throws
  /// Error(invalid_signal) for non-finite input and Error(unreachable_state)
  /// if no interval matches.
  std::size_t classify(double value) const;

 private:
  std::vector<IntervalState> states_;
  std::optional<std::size_t> neutral_;
  std::string id_;
};

/// An arc of (-pi, pi]. Default flags are left-open / right-closed.
struct AngularSector {
  std::string name;
  double lower;
  double upper;
  bool lower_inclusive = false;
  bool upper_inclusive = true;

  bool contains(double angle) const noexcept;
};

class AngularPartition {
 public:
  explicit AngularPartition(std::vector<AngularSector> sectors);

  /// Theta_1 = (0, pi/2], Theta_2 = (pi/2, pi], Theta_3 = (-pi, -pi/2],
  /// Theta_4 = (-pi/2, 0].
  static AngularPartition quadrants();

  /// K equal left-open / right-closed arcs starting at -pi.
  static AngularPartition uniform(std::size_t k);

  std::size_t size() const noexcept { return sectors_.size(); }
  const std::vector<AngularSector>& sectors() const noexcept { return sectors_; }
  const std::string& id() const noexcept { return id_; }

  /// `angle` must lie in [-pi, pi]; -pi is treated as +pi.
  std::size_t classify(double angle) const;

 private:
  std::vector<AngularSector> sectors_;
  std::string id_;
};

/// atan2 in (-pi, pi]; the negative real axis (including a -0.0 imaginary
/// part) maps to +pi.
double principal_argument(double re, double im) noexcept;

/// Map from fine state index to coarse group index.
class CoarseningMap {
 public:
  /// `groups` must be disjoint and cover {0..fine_count-1}; empty groups are
  /// rejected. Names default to "g0", "g1", ...
  CoarseningMap(std::size_t fine_count, std::vector<std::vector<std::size_t>> groups,
                std::vector<std::string> names = {});

  static CoarseningMap identity(std::size_t fine_count);
  static CoarseningMap all_to_one(std::size_t fine_count);

  std::size_t fine_count() const noexcept { return fine_to_coarse_.size(); }
  std::size_t coarse_count() const noexcept { return groups_.size(); }
  std::size_t operator()(std::size_t fine) const { return fine_to_coarse_.at(fine); }

  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::span<const std::size_t> table() const noexcept { return fine_to_coarse_; }

  /// Deterministic tag appended to partition ids of pushed-forward measures.
  std::string fingerprint() const;

 private:
  std::vector<std::size_t> fine_to_coarse_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::string> names_;
};

}  // namespace peakjac
