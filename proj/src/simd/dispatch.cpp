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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "peakjac/simd/kernels.hpp"

namespace peakjac::simd {

namespace {

Isa detect() noexcept {
  if (const char* force = std::getenv("PEAKJAC_FORCE_SCALAR"); force && std::strcmp(force, "1") == 0) {
    return Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#ifdef PEAKJAC_HAVE_AVX2_KERNELS
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept {
#ifdef PEAKJAC_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::peak_sums(a, b);
#endif
  return scalar::peak_sums(a, b);
}

OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept {
#ifdef PEAKJAC_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::minmax_sums(u, v);
#endif
  return scalar::minmax_sums(u, v);
}

double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept {
#ifdef PEAKJAC_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return avx2::abs_diff_sum(u, v);
#endif
  return scalar::abs_diff_sum(u, v);
}

}  // namespace peakjac::simd
