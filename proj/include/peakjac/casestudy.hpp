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

#include <cstddef>
#include <span>
#include <vector>

#include "peakjac/embedding.hpp"

namespace peakjac {

/// A_i = sin(2 pi t_i / T) and B_i = sin(2 pi (t_i - shift) / T), sampled at
/// t_i = i T / samples for i = 0..samples-1 (one period, right end open).
struct PhaseShiftPair {
  std::vector<double> t;
  Signal a;
  Signal b;
  double period;
  double shift;
  double phase;  // 2 pi shift / T
};

PhaseShiftPair phase_shift_pair(std::size_t samples, double period, double shift);

/// Per-coordinate contributions to N(A,B) and U_peak(A,B).
struct OverlapEnvelope {
  std::vector<double> intersection;
  std::vector<double> union_mass;
};

OverlapEnvelope overlap_envelope(const Signal& a, const Signal& b);

/// Sample Pearson correlation. Throws Error(invalid_argument) for constant
/// input or fewer than two samples.
double pearson(std::span<const double> x, std::span<const double> y);

struct CaseStudySummary {
  double similarity;
  double distance;
  double pearson;
  double cos_phase;
};

CaseStudySummary summarize(const PhaseShiftPair& pair);

}  // namespace peakjac
