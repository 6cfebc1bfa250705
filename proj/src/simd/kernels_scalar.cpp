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

#include <algorithm>
#include <cmath>

#include "peakjac/simd/kernels.hpp"

namespace peakjac::simd::scalar {

OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept {
  double inter = 0.0;
  double uni = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ap = std::max(a[i], 0.0);
    const double an = std::max(-a[i], 0.0);
    const double bp = std::max(b[i], 0.0);
    const double bn = std::max(-b[i], 0.0);
    inter += std::min(ap, bp) + std::min(an, bn);
    uni += std::max(ap, bp) + std::max(an, bn);
  }
  return {inter, uni};
}

OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept {
  double inter = 0.0;
  double uni = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    inter += std::min(u[i], v[i]);
    uni += std::max(u[i], v[i]);
  }
  return {inter, uni};
}

double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) total += std::abs(u[i] - v[i]);
  return total;
}

}  // namespace peakjac::simd::scalar
