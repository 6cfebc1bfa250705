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
 * Pairwise peak-to-peak measures.
 *
 *   N(A,B)      = sum over same-sign coordinates of min(|A_i|, |B_i|)
 *   U_peak(A,B) = sum_i max(A_i+, B_i+) + max(A_i-, B_i-)
 *   J_peak      = N / U_peak, or 1 when U_peak = 0
 *   d_peak      = 1 - J_peak
 *
 * d_peak is the min/max Tanimoto distance between sign-split embeddings,
 * which makes it a bounded metric; J_peak and exp(-lambda d_peak) are PSD
 * kernels. The same Tanimoto construction applied to multistate and complex
 * embeddings gives d_multi and d_complex (pseudometrics on the raw signals).
 */

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>

#include "peakjac/embedding.hpp"
#include "peakjac/partition.hpp"

namespace peakjac {

struct PairwiseResult {
  double intersection = 0.0;
  double union_mass = 0.0;
  double similarity = 1.0;
  double distance = 0.0;
  bool degenerate = true;  // union_mass == 0

  /// Applies the J = 1 convention when `union_mass` is zero.
  static PairwiseResult from_sums(double intersection, double union_mass) noexcept;
};

/// Relative PSD tolerance: min eigenvalue >= -tol * max(1, |largest eigenvalue|).
inline constexpr double kPsdTolerance = 1e-9;
/// Gram matrices larger than this are not eigen-checked.
inline constexpr std::size_t kPsdCheckLimit = 512;

/// Min/max Tanimoto on two compatible embeddings (sparse merge, scalar).
PairwiseResult tanimoto(const MassEmbedding& u, const MassEmbedding& v);

/// Sign-aware intersection N(A,B), straight from its definition.
double peak_intersection(const Signal& a, const Signal& b);

/// Peak-to-peak union U_peak(A,B), straight from its definition.
double peak_union(const Signal& a, const Signal& b);

/// Tanimoto of the sign-split embeddings; cross-checks the numerator against
/// peak_intersection() and throws Error(invariant_violation) on mismatch.
PairwiseResult d_peak(const Signal& a, const Signal& b);

PairwiseResult d_multi(const Signal& a, const Signal& b, const StatePartition& partition);

/// Cartesian embedding.
PairwiseResult d_complex(const ComplexSignal& z, const ComplexSignal& w);
/// Polar embedding over `sectors`.
PairwiseResult d_complex(const ComplexSignal& z, const ComplexSignal& w, const AngularPartition& sectors);

/// exp(-lambda * d_peak(a, b)); lambda must be positive and finite.
double radial_kernel(const Signal& a, const Signal& b, double lambda);

enum class KernelKind { peak, radial };

struct KernelSpec {
  KernelKind kind = KernelKind::peak;
  double lambda = 1.0;  // radial only
};

struct PsdCheck {
  bool checked = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool ok = true;  // true when unchecked
};

/// Symmetric eigen-solve of `m` when it has at most kPsdCheckLimit rows.
PsdCheck check_psd(const Eigen::MatrixXd& m, double tolerance = kPsdTolerance);

struct GramMatrix {
  Eigen::MatrixXd values;
  KernelSpec kernel;
  PsdCheck psd;
};

/// Kernel Gram matrix of raw signals. Without a partition the sign-split
/// route runs directly on the signals through the dense SIMD kernels.
GramMatrix gram(std::span<const Signal> signals, KernelSpec kernel = {},
                const StatePartition* partition = nullptr);

/// Kernel Gram matrix of pre-computed, mutually compatible embeddings.
GramMatrix gram(std::span<const MassEmbedding> embeddings, KernelSpec kernel = {});

/// Symmetric matrix of Tanimoto distances with a zero diagonal.
Eigen::MatrixXd distance_matrix(std::span<const MassEmbedding> embeddings);

}  // namespace peakjac
