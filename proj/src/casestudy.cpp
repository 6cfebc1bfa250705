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

#include "peakjac/casestudy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "peakjac/error.hpp"
#include "peakjac/pairwise.hpp"

namespace peakjac {

namespace {

std::vector<double> sample(std::size_t n, double period, double shift, std::vector<double>* times) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(n);
    if (times) times->push_back(t);
    out[i] = std::sin(2 * std::numbers::pi * (t - shift) / period);
  }
  return out;
}

}  // namespace

PhaseShiftPair phase_shift_pair(std::size_t samples, double period, double shift) {
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "need at least 2 samples");
  if (!(period > 0) || !std::isfinite(period)) throw Error(ErrorCode::invalid_argument, "period must be positive");
  if (!std::isfinite(shift)) throw Error(ErrorCode::invalid_argument, "shift must be finite");
  std::vector<double> t;
  t.reserve(samples);
  Signal a(sample(samples, period, 0.0, &t), "A");
  Signal b(sample(samples, period, shift, nullptr), "B");
  return {std::move(t), std::move(a), std::move(b), period, shift, 2 * std::numbers::pi * shift / period};
}

OverlapEnvelope overlap_envelope(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::shape_mismatch, "signal lengths differ");
  OverlapEnvelope env;
  env.intersection.reserve(a.size());
  env.union_mass.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    const bool same = sign_of(x) != 0 && sign_of(x) == sign_of(y);
    env.intersection.push_back(same ? std::min(std::abs(x), std::abs(y)) : 0.0);
    env.union_mass.push_back(std::max({x, y, 0.0}) + std::max({-x, -y, 0.0}));
  }
  return env;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "pearson needs two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw Error(ErrorCode::invalid_argument, "pearson is undefined for constant input");
  return sxy / std::sqrt(sxx * syy);
}

CaseStudySummary summarize(const PhaseShiftPair& pair) {
  const auto r = d_peak(pair.a, pair.b);
  return {r.similarity, r.distance, pearson(pair.a.values(), pair.b.values()), std::cos(pair.phase)};
}

}  // namespace peakjac
