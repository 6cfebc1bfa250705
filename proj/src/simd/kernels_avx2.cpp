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

// Built with -mavx2. Nothing in this file may be called unless
// avx2_available() returned true.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "peakjac/simd/kernels.hpp"

namespace peakjac::simd::avx2 {

namespace {

inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d abs_pd(__m256d v) noexcept { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

OverlapSums peak_sums(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size();
  const __m256d zero = _mm256_setzero_pd();
  __m256d inter0 = zero, inter1 = zero, uni0 = zero, uni1 = zero;
  std::size_t i = 0;
  auto step = [&](std::size_t at, __m256d& inter, __m256d& uni) {
    const __m256d va = _mm256_loadu_pd(a.data() + at);
    const __m256d vb = _mm256_loadu_pd(b.data() + at);
    const __m256d ap = _mm256_max_pd(va, zero);
    const __m256d an = _mm256_max_pd(_mm256_sub_pd(zero, va), zero);
    const __m256d bp = _mm256_max_pd(vb, zero);
    const __m256d bn = _mm256_max_pd(_mm256_sub_pd(zero, vb), zero);
    inter = _mm256_add_pd(inter, _mm256_add_pd(_mm256_min_pd(ap, bp), _mm256_min_pd(an, bn)));
    uni = _mm256_add_pd(uni, _mm256_add_pd(_mm256_max_pd(ap, bp), _mm256_max_pd(an, bn)));
  };
  for (; i + 8 <= n; i += 8) {
    step(i, inter0, uni0);
    step(i + 4, inter1, uni1);
  }
  for (; i + 4 <= n; i += 4) step(i, inter0, uni0);
  double inter = hsum(_mm256_add_pd(inter0, inter1));
  double uni = hsum(_mm256_add_pd(uni0, uni1));
  for (; i < n; ++i) {
    const double ap = std::max(a[i], 0.0), an = std::max(-a[i], 0.0);
    const double bp = std::max(b[i], 0.0), bn = std::max(-b[i], 0.0);
    inter += std::min(ap, bp) + std::min(an, bn);
    uni += std::max(ap, bp) + std::max(an, bn);
  }
  return {inter, uni};
}

OverlapSums minmax_sums(std::span<const double> u, std::span<const double> v) noexcept {
  const std::size_t n = u.size();
  __m256d inter0 = _mm256_setzero_pd(), inter1 = inter0, uni0 = inter0, uni1 = inter0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d u0 = _mm256_loadu_pd(u.data() + i), v0 = _mm256_loadu_pd(v.data() + i);
    const __m256d u1 = _mm256_loadu_pd(u.data() + i + 4), v1 = _mm256_loadu_pd(v.data() + i + 4);
    inter0 = _mm256_add_pd(inter0, _mm256_min_pd(u0, v0));
    inter1 = _mm256_add_pd(inter1, _mm256_min_pd(u1, v1));
    uni0 = _mm256_add_pd(uni0, _mm256_max_pd(u0, v0));
    uni1 = _mm256_add_pd(uni1, _mm256_max_pd(u1, v1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d u0 = _mm256_loadu_pd(u.data() + i), v0 = _mm256_loadu_pd(v.data() + i);
    inter0 = _mm256_add_pd(inter0, _mm256_min_pd(u0, v0));
    uni0 = _mm256_add_pd(uni0, _mm256_max_pd(u0, v0));
  }
  double inter = hsum(_mm256_add_pd(inter0, inter1));
  double uni = hsum(_mm256_add_pd(uni0, uni1));
  for (; i < n; ++i) {
    inter += std::min(u[i], v[i]);
    uni += std::max(u[i], v[i]);
  }
  return {inter, uni};
}

double abs_diff_sum(std::span<const double> u, std::span<const double> v) noexcept {
  const std::size_t n = u.size();
  __m256d acc0 = _mm256_setzero_pd(), acc1 = acc0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(u.data() + i), _mm256_loadu_pd(v.data() + i))));
    acc1 = _mm256_add_pd(
        acc1, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(u.data() + i + 4), _mm256_loadu_pd(v.data() + i + 4))));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(u.data() + i), _mm256_loadu_pd(v.data() + i))));
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += std::abs(u[i] - v[i]);
  return total;
}

}  // namespace peakjac::simd::avx2
