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

// Random generators and straight-line reference implementations shared by
// the test binaries. Nothing here calls into the library's numeric code.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace peakjac::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Mix of exact zeros, small and large magnitudes of both signs.
  double value() {
    const double r = uniform(0.0, 1.0);
    if (r < 0.15) return 0.0;
    const double mag = r < 0.55 ? uniform(0.0, 1.0) : std::exp(uniform(-4.0, 4.0));
    return chance(0.5) ? mag : -mag;
  }

  // Multiples of 1/8 in [-8, 8]; every operation on these stays exact.
  double rational() { return static_cast<double>(static_cast<int>(size(0, 128)) - 64) / 8.0; }

  std::vector<double> vec(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = value();
    return v;
  }

  std::vector<double> rational_vec(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rational();
    return v;
  }

  std::vector<std::complex<double>> cvec(std::size_t n) {
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {value(), value()};
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct Sums {
  double n = 0.0;
  double u = 0.0;
};

// N and U_peak evaluated coordinate by coordinate from the definitions.
inline Sums oracle_peak(const std::vector<double>& a, const std::vector<double>& b) {
  Sums s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    double row_n = 0.0;
    if (x > 0 && y > 0) row_n = std::min(x, y);
    if (x < 0 && y < 0) row_n = std::min(-x, -y);
    const double pos = std::max(x > 0 ? x : 0.0, y > 0 ? y : 0.0);
    const double neg = std::max(x < 0 ? -x : 0.0, y < 0 ? -y : 0.0);
    s.n += row_n;
    s.u += pos + neg;
  }
  return s;
}

inline double oracle_jaccard(const std::vector<double>& a, const std::vector<double>& b) {
  const Sums s = oracle_peak(a, b);
  return s.u == 0.0 ? 1.0 : s.n / s.u;
}

// Dense n x K table from explicit per-state interval bounds.
struct Interval {
  double lo, hi;
  bool lo_in, hi_in;
};

inline std::vector<std::vector<double>> oracle_multistate(const std::vector<double>& x,
                                                          const std::vector<Interval>& states) {
  std::vector<std::vector<double>> out(x.size(), std::vector<double>(states.size(), 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto& s = states[k];
      const bool above = s.lo_in ? x[i] >= s.lo : x[i] > s.lo;
      const bool below = s.hi_in ? x[i] <= s.hi : x[i] < s.hi;
      if (above && below) out[i][k] = std::abs(x[i]);
    }
  }
  return out;
}

// N(S) for every nonempty mask by brute force over dense tables.
inline std::vector<double> oracle_cumulative(const std::vector<std::vector<std::vector<double>>>& dense) {
  const std::size_t m = dense.size();
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::uint64_t mask = 1; mask < out.size(); ++mask) {
    double total = 0.0;
    for (std::size_t i = 0; i < dense[0].size(); ++i) {
      for (std::size_t k = 0; k < dense[0][i].size(); ++k) {
        double lo = INFINITY;
        for (std::size_t j = 0; j < m; ++j) {
          if (mask >> j & 1U) lo = std::min(lo, dense[j][i][k]);
        }
        total += lo;
      }
    }
    out[mask] = total;
  }
  return out;
}

// Explicit signed sum over supersets.
inline std::vector<double> oracle_mobius(const std::vector<double>& cumulative, std::size_t m) {
  std::vector<double> out(cumulative.size(), 0.0);
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t s = 1; s <= full; ++s) {
    double total = 0.0;
    for (std::uint64_t t = s; t <= full; ++t) {
      if ((t & s) != s) continue;
      const int sign = (std::popcount(t) - std::popcount(s)) % 2 == 0 ? 1 : -1;
      total += sign * cumulative[t];
    }
    out[s] = total;
  }
  return out;
}

// Per-atom layer form: an atom contributes (min over S - max over the rest)+
// to exactly the coalition S.
inline std::vector<double> oracle_layers(const std::vector<std::vector<std::vector<double>>>& dense) {
  const std::size_t m = dense.size();
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::uint64_t s = 1; s < out.size(); ++s) {
    double total = 0.0;
    for (std::size_t i = 0; i < dense[0].size(); ++i) {
      for (std::size_t k = 0; k < dense[0][i].size(); ++k) {
        double in = INFINITY, rest = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          if (s >> j & 1U) {
            in = std::min(in, dense[j][i][k]);
          } else {
            rest = std::max(rest, dense[j][i][k]);
          }
        }
        total += std::max(0.0, in - rest);
      }
    }
    out[s] = total;
  }
  return out;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace peakjac::testing
