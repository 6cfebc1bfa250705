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
 * Dense reduction kernels behind Gram matrices and distance matrices.
 *
 * Each kernel has a scalar reference in peakjac::simd::scalar and, on x86-64,
 * an AVX2 variant in peakjac::simd::avx2 compiled in its own translation unit.
 * The unqualified entry points dispatch once, at first use, to the best
 * variant the running CPU supports. Variants differ only in summation order,
 * so results agree to rounding, not bit for bit.
 *
 * Inputs must be finite and of equal length (checked by the callers).
 */

#pragma once

#include <span>
#include <string_view>

namespace peakjac::simd {

struct OverlapSums {
  double intersection;
  double union_mass;
};

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the CPU (and this build) can run the AVX2 kernels.
bool avx2_available() noexcept;

/// Variant used by the dispatching entry points. Defaults to the best
/// available; the environment variable PEAKJAC_FORCE_SCALAR=1 pins scalar.
Isa active_isa() noexcept;

/// Overrides dispatch (tests and benchmarks). Requesting avx2 on a CPU
/// without it falls back to scalar. Returns the variant now in effect.
Isa set_active_isa(Isa isa) noexcept;

/// Sign-split min/max sums on raw signed signals:
///   intersection = sum_i min(a+, b+) + min(a-, b-)
///   union        = sum_i max(a+, b+) + max(a-, b-)
OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept;

/// Tanimoto sums of two nonnegative vectors: sum min(u, v), sum max(u, v).
OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept;

/// sum |u - v|.
double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept;

namespace scalar {
OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept;
OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept;
double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define PEAKJAC_HAVE_AVX2_KERNELS 1
namespace avx2 {
OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept;
OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept;
double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept;
}  // namespace avx2
#endif

}  // namespace peakjac::simd
