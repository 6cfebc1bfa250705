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

#include "peakjac/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "peakjac/error.hpp"

namespace peakjac {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_signal: return "invalid_signal";
    case ErrorCode::invalid_partition: return "invalid_partition";
    case ErrorCode::unreachable_state: return "unreachable_state";
    case ErrorCode::invalid_grouping: return "invalid_grouping";
    case ErrorCode::shape_mismatch: return "shape_mismatch";
    case ErrorCode::partition_mismatch: return "partition_mismatch";
    case ErrorCode::coalition_cap: return "coalition_cap";
    case ErrorCode::missing_coalition: return "missing_coalition";
    case ErrorCode::vacuum: return "vacuum";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::invariant_violation: return "invariant_violation";
  }
  return "unknown";
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

bool parse_double(std::string_view token, double& out) noexcept {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  if (token == "inf" || token == "+inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (token == "-inf") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (token.front() == '+') token.remove_prefix(1);
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace peakjac
