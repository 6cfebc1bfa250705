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
 * Measure view of an embedding. Each embedded signal A induces a finite
 * measure nu_A on the atoms Omega = {rows} x {states}, with total mass
 * M_A = ||A||_1. With
 *
 *   TV(nu_A, nu_B) = 1/2 sum_w |nu_A(w) - nu_B(w)|
 *   delta          = TV / ((M_A + M_B) / 2)          in [0, 1]
 *
 * the peak similarity is a monotone transform of delta:
 *
 *   J = (M_A + M_B - 2 TV) / (M_A + M_B + 2 TV) = (1 - delta) / (1 + delta)
 *   d = 2 delta / (1 + delta)
 *
 * Pushing measures forward along a state coarsening keeps total mass and can
 * only shrink TV, so coarser partitions never increase d.
 */

#pragma once

#include <span>

#include "peakjac/embedding.hpp"
#include "peakjac/pairwise.hpp"
#include "peakjac/partition.hpp"

namespace peakjac {

/// nu_A: the embedding reinterpreted as a measure (same storage).
class AtomMeasure {
 public:
  explicit AtomMeasure(MassEmbedding embedding) : embedding_(std::move(embedding)) {}

  const MassEmbedding& embedding() const noexcept { return embedding_; }
  std::span<const Atom> atoms() const noexcept { return embedding_.atoms(); }
  double total_mass() const noexcept { return embedding_.total_mass(); }

 private:
  MassEmbedding embedding_;
};

/// P_A = nu_A / M_A.
class AtomDistribution {
 public:
  std::size_t rows() const noexcept { return rows_; }
  std::size_t states() const noexcept { return states_; }
  const std::string& partition_id() const noexcept { return partition_id_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

 private:
  friend AtomDistribution normalize(const AtomMeasure& measure);
  std::size_t rows_ = 0;
  std::size_t states_ = 0;
  std::string partition_id_;
  std::vector<Atom> atoms_;  // `mass` holds probabilities
};

AtomMeasure measure_of(MassEmbedding embedding);

/// Throws Error(vacuum) when the measure has zero total mass.
AtomDistribution normalize(const AtomMeasure& measure);

/// Half the atomwise L1 difference; absent atoms count as zero.
double total_variation(const AtomMeasure& mu, const AtomMeasure& nu);
double total_variation(const AtomDistribution& p, const AtomDistribution& q);

/// TV / ((M_A + M_B) / 2). Throws Error(vacuum) when both masses are zero.
double normalized_discrepancy(const AtomMeasure& mu, const AtomMeasure& nu);

struct TvConsistency {
  double mass_a = 0.0;
  double mass_b = 0.0;
  double tv = 0.0;
  double delta = 0.0;
  double j_direct = 1.0;
  double j_via_tv = 1.0;
  double d_direct = 0.0;
  double d_via_tv = 0.0;
  double residual = 0.0;  // |j_direct - j_via_tv|
  bool vacuum = false;    // both signals zero; delta bypassed
  bool consistent = true;
};

inline constexpr double kTvTolerance = 1e-12;

/// Both routes to J on a pair of compatible embeddings.
TvConsistency tv_consistency(const MassEmbedding& a, const MassEmbedding& b);
TvConsistency tv_consistency(const Signal& a, const Signal& b, const StatePartition& partition);

/// nu o pi^{-1}: merges states within each row; total mass is preserved.
AtomMeasure pushforward(const AtomMeasure& measure, const CoarseningMap& map);

}  // namespace peakjac
