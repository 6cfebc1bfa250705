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

#include "peakjac/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "peakjac/error.hpp"
#include "peakjac/format.hpp"

namespace peakjac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

template <typename Range>
bool interval_contains(const Range& r, double v) noexcept {
  const bool above = r.lower_inclusive ? v >= r.lower : v > r.lower;
  const bool below = r.upper_inclusive ? v <= r.upper : v < r.upper;
  return above && below;
}

template <typename Range>
bool well_formed(const Range& r) noexcept {
  if (std::isnan(r.lower) || std::isnan(r.upper)) return false;
  if (r.lower == kInf || r.upper == -kInf) return false;
  if (r.lower < r.upper) return true;
  return r.lower == r.upper && r.lower_inclusive && r.upper_inclusive;
}

template <typename Range>
std::string canonical(const std::vector<Range>& ranges) {
  std::string s;
  for (const auto& r : ranges) {
    s += r.lower_inclusive ? '[' : '(';
    s += format_double(r.lower);
    s += ',';
    s += format_double(r.upper);
    s += r.upper_inclusive ? ']' : ')';
    s += ';';
  }
  return s;
}

std::string make_id(char prefix, std::string_view canon) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%c:%016llx", prefix,
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

std::string describe(double v) { return format_double(v); }

// Endpoints, midpoints of consecutive endpoints, and the outer probes.
std::vector<double> probe_points(std::vector<double> endpoints) {
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  std::vector<double> probes = endpoints;
  for (std::size_t i = 0; i + 1 < endpoints.size(); ++i) {
    probes.push_back(endpoints[i] + (endpoints[i + 1] - endpoints[i]) / 2);
  }
  if (!endpoints.empty()) {
    const double lo = endpoints.front();
    const double hi = endpoints.back();
    probes.push_back(lo - std::max(1.0, std::abs(lo)));
    probes.push_back(hi + std::max(1.0, std::abs(hi)));
  }
  return probes;
}

}  // namespace

int sign_of(double value) noexcept {
  if (value > 0) return 1;
  if (value < 0) return -1;
  return 0;
}

bool IntervalState::contains(double value) const noexcept { return interval_contains(*this, value); }

bool AngularSector::contains(double angle) const noexcept { return interval_contains(*this, angle); }

StatePartition::StatePartition(std::vector<IntervalState> states, std::optional<std::size_t> neutral)
    : states_(std::move(states)), neutral_(neutral) {
  if (states_.size() < 2) {
    throw Error(ErrorCode::invalid_partition, "partition needs at least 2 states, got " +
                                                  std::to_string(states_.size()));
  }
  if (neutral_ && *neutral_ >= states_.size()) {
    throw Error(ErrorCode::invalid_partition, "neutral index " + std::to_string(*neutral_) +
                                                  " out of range");
  }
  std::vector<double> endpoints{0.0};
  for (std::size_t k = 0; k < states_.size(); ++k) {
    const auto& s = states_[k];
    if (!well_formed(s)) {
      throw Error(ErrorCode::invalid_partition, "state " + std::to_string(k) + " ('" + s.name +
                                                    "') is not a valid interval");
    }
    if (std::isfinite(s.lower)) endpoints.push_back(s.lower);
    if (std::isfinite(s.upper)) endpoints.push_back(s.upper);
  }
  auto probes = probe_points(std::move(endpoints));
  probes.push_back(std::numeric_limits<double>::max());
  probes.push_back(std::numeric_limits<double>::lowest());
  for (double p : probes) {
    std::size_t hits = 0;
    for (const auto& s : states_) hits += s.contains(p) ? 1 : 0;
    if (hits == 0) {
      throw Error(ErrorCode::invalid_partition, "value " + describe(p) + " is not covered by any state");
    }
    if (hits > 1) {
      throw Error(ErrorCode::invalid_partition, "value " + describe(p) + " lies in " +
                                                    std::to_string(hits) + " states");
    }
  }
  id_ = make_id('p', canonical(states_));
}

StatePartition StatePartition::sign_split() {
  return StatePartition({{"positive", 0.0, kInf, false, false},
                         {"nonpositive", -kInf, 0.0, false, true}});
}

StatePartition StatePartition::financial_five_state(double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::invalid_argument, "tau must be positive and finite");
  }
  return StatePartition({{"neutral", 0.0, 0.0, true, true},
                         {"large_profit", tau, kInf, false, false},
                         {"small_profit", 0.0, tau, false, true},
                         {"small_loss", -tau, 0.0, true, false},
                         {"large_loss", -kInf, -tau, false, false}},
                        0);
}

StatePartition StatePartition::neutral_band_five_state(double eta, double tau) {
  if (!(eta > 0) || !(tau > eta) || !std::isfinite(tau)) {
    throw Error(ErrorCode::invalid_argument, "need 0 < eta < tau < inf");
  }
  return StatePartition({{"neutral", -eta, eta, true, true},
                         {"large_loss", -kInf, -tau, false, true},
                         {"small_loss", -tau, -eta, false, false},
                         {"small_gain", eta, tau, false, true},
                         {"large_gain", tau, kInf, false, false}},
                        0);
}

StatePartition StatePartition::neutral_band_three_state(double eta) {
  if (!(eta > 0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::invalid_argument, "eta must be positive and finite");
  }
  return StatePartition({{"neutral", -eta, eta, true, true},
                         {"positive", eta, kInf, false, false},
                         {"negative", -kInf, -eta, false, false}},
                        0);
}

std::size_t StatePartition::classify(double value) const {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::invalid_signal, "cannot classify non-finite value");
  }
  for (std::size_t k = 0; k < states_.size(); ++k) {
    if (states_[k].contains(value)) return k;
  }
  throw Error(ErrorCode::unreachable_state, "no state contains " + describe(value));
}

AngularPartition::AngularPartition(std::vector<AngularSector> sectors) : sectors_(std::move(sectors)) {
  if (sectors_.empty()) throw Error(ErrorCode::invalid_partition, "angular partition has no sectors");
  std::vector<double> endpoints{-kPi, kPi};
  for (std::size_t k = 0; k < sectors_.size(); ++k) {
    const auto& s = sectors_[k];
    if (!well_formed(s) || s.lower < -kPi || s.upper > kPi) {
      throw Error(ErrorCode::invalid_partition, "sector " + std::to_string(k) + " ('" + s.name +
                                                    "') is not an arc of [-pi, pi]");
    }
    endpoints.push_back(s.lower);
    endpoints.push_back(s.upper);
  }
  for (double p : probe_points(std::move(endpoints))) {
    if (!(p > -kPi && p <= kPi)) continue;
    std::size_t hits = 0;
    for (const auto& s : sectors_) hits += s.contains(p) ? 1 : 0;
    if (hits != 1) {
      throw Error(ErrorCode::invalid_partition, "angle " + describe(p) + " lies in " +
                                                    std::to_string(hits) + " sectors");
    }
  }
  id_ = make_id('a', canonical(sectors_));
}

AngularPartition AngularPartition::quadrants() {
  return AngularPartition({{"theta1", 0.0, kPi / 2},
                           {"theta2", kPi / 2, kPi},
                           {"theta3", -kPi, -kPi / 2},
                           {"theta4", -kPi / 2, 0.0}});
}

AngularPartition AngularPartition::uniform(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "sector count must be positive");
  std::vector<AngularSector> sectors;
  const auto edge = [k](std::size_t j) {
    return j == k ? kPi : -kPi + 2 * kPi * static_cast<double>(j) / static_cast<double>(k);
  };
  for (std::size_t j = 0; j < k; ++j) {
    sectors.push_back({"sector" + std::to_string(j), edge(j), edge(j + 1)});
  }
  return AngularPartition(std::move(sectors));
}

std::size_t AngularPartition::classify(double angle) const {
  if (angle == -kPi) angle = kPi;
  if (!(angle > -kPi && angle <= kPi)) {
    throw Error(ErrorCode::invalid_argument, "angle " + describe(angle) + " is not a principal argument");
  }
  for (std::size_t k = 0; k < sectors_.size(); ++k) {
    if (sectors_[k].contains(angle)) return k;
  }
  throw Error(ErrorCode::unreachable_state, "no sector contains angle " + describe(angle));
}

double principal_argument(double re, double im) noexcept {
  const double a = std::atan2(im, re);
  return a == -kPi ? kPi : a;
}

CoarseningMap::CoarseningMap(std::size_t fine_count, std::vector<std::vector<std::size_t>> groups,
                             std::vector<std::string> names)
    : fine_to_coarse_(fine_count, fine_count), groups_(std::move(groups)), names_(std::move(names)) {
  if (names_.empty()) {
    for (std::size_t g = 0; g < groups_.size(); ++g) names_.push_back("g" + std::to_string(g));
  }
  if (names_.size() != groups_.size()) {
    throw Error(ErrorCode::invalid_grouping, "group name count does not match group count");
  }
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].empty()) {
      throw Error(ErrorCode::invalid_grouping, "group '" + names_[g] + "' is empty");
    }
    for (std::size_t k : groups_[g]) {
      if (k >= fine_count) {
        throw Error(ErrorCode::invalid_grouping, "state index " + std::to_string(k) + " out of range");
      }
      if (fine_to_coarse_[k] != fine_count) {
        throw Error(ErrorCode::invalid_grouping, "state index " + std::to_string(k) +
                                                     " appears in more than one group");
      }
      fine_to_coarse_[k] = g;
    }
  }
  for (std::size_t k = 0; k < fine_count; ++k) {
    if (fine_to_coarse_[k] == fine_count) {
      throw Error(ErrorCode::invalid_grouping, "state index " + std::to_string(k) + " is not in any group");
    }
  }
}

CoarseningMap CoarseningMap::identity(std::size_t fine_count) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < fine_count; ++k) groups.push_back({k});
  return CoarseningMap(fine_count, std::move(groups));
}

CoarseningMap CoarseningMap::all_to_one(std::size_t fine_count) {
  std::vector<std::size_t> all(fine_count);
  for (std::size_t k = 0; k < fine_count; ++k) all[k] = k;
  return CoarseningMap(fine_count, {std::move(all)}, {"all"});
}

std::string CoarseningMap::fingerprint() const {
  std::string s = "c" + std::to_string(fine_count()) + ":";
  for (std::size_t g : fine_to_coarse_) s += std::to_string(g) + ",";
  return s;
}

}  // namespace peakjac
