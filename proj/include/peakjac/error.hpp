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

#include <stdexcept>
#include <string>
#include <string_view>

namespace peakjac {

enum class ErrorCode {
  invalid_signal,
  invalid_partition,
  unreachable_state,
  invalid_grouping,
  shape_mismatch,
  partition_mismatch,
  coalition_cap,
  missing_coalition,
  vacuum,
  invalid_argument,
  parse_error,
  io_error,
  invariant_violation,
};

/// Stable lowercase name, used in machine-readable CLI diagnostics.
std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a distinct exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace peakjac
