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
 * File formats.
 *
 * Signals, CSV: one signal per row, first field is the id, remaining fields
 * are coordinates. Complex rows hold re,im pairs. Blank lines and lines
 * starting with '#' are skipped.
 *
 * Signals, JSON:
 *   {"signals": [{"id": "A1", "values": [8.2, 0.3]}]}
 *   complex values are [[re, im], ...]
 *
 * Partitions, JSON:
 *   {"states": [{"name": "neutral", "lower": -0.1, "upper": 0.1,
 *                "lower_inclusive": true, "upper_inclusive": true}, ...],
 *    "neutral": 0}
 * Bounds are numbers or the strings "-inf" / "inf". Angular partitions use
 * "sectors" with radian bounds ("-pi" / "pi" accepted).
 *
 * Groupings, JSON: [{"name": "gain", "states": [3, 4]}, ...] or the object
 * form {"gain": [3, 4], ...} (groups ordered by name).
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "peakjac/coalition.hpp"
#include "peakjac/embedding.hpp"
#include "peakjac/partition.hpp"
#include "peakjac/probabilistic.hpp"

namespace peakjac {

enum class InputFormat { csv, json };

/// Homogeneous batch of equal-length signals with unique ids.
struct SignalSet {
  bool is_complex = false;
  std::vector<Signal> real;
  std::vector<ComplexSignal> complex;
  std::string source;

  std::size_t size() const noexcept { return is_complex ? complex.size() : real.size(); }
  std::size_t length() const noexcept;
  std::vector<std::string> ids() const;
};

SignalSet parse_signals_csv(std::string_view text, bool complex_mode, std::string source = "<memory>");
SignalSet parse_signals_json(std::string_view text, bool complex_mode, std::string source = "<memory>");
SignalSet load_signals(const std::filesystem::path& path, InputFormat format, bool complex_mode);

/// Shortest round-trip decimal CSV in the load_signals layout.
std::string signals_to_csv(const SignalSet& set);

StatePartition partition_from_json(const nlohmann::json& j);
nlohmann::json partition_to_json(const StatePartition& p);
AngularPartition angular_partition_from_json(const nlohmann::json& j);
CoarseningMap grouping_from_json(const nlohmann::json& j, std::size_t fine_count);

nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json embedding_to_json(const MassEmbedding& e, const std::string& id = {});
nlohmann::json report_to_json(const CoalitionReport& report);
/// Flat form: coalition,order,cumulative,exclusive (plus per-group columns).
std::string report_to_csv(const CoalitionReport& report);
/// Human-readable table; exclusive budgets below kDisplayZero print as 0.
std::string report_to_text(const CoalitionReport& report);
nlohmann::json coherence_to_json(const CoherenceProfile& profile);
nlohmann::json tv_to_json(const TvConsistency& r);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace peakjac
