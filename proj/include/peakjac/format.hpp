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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace peakjac {

/// Shortest decimal that parses back to the same double. Infinities are
/// written as "inf" / "-inf".
std::string format_double(double value);

/// Parses a full token as a double; accepts "inf", "-inf", "+inf".
/// Returns false on any trailing garbage.
bool parse_double(std::string_view token, double& out) noexcept;

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace peakjac
