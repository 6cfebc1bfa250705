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

#include "peakjac/probabilistic.hpp"

#include <cmath>
#include <map>

#include "peakjac/error.hpp"

namespace peakjac {

namespace {

// Sum of |x - y| over the union of two sorted atom lists.
double abs_difference(std::span<const Atom> x, std::span<const Atom> y) {
  double total = 0.0;
  std::size_t p = 0, q = 0;
  while (p < x.size() || q < y.size()) {
    const bool take_x = q >= y.size() || (p < x.size() && (x[p].row < y[q].row ||
                                                           (x[p].row == y[q].row && x[p].state < y[q].state)));
    const bool take_y = p >= x.size() || (q < y.size() && (y[q].row < x[p].row ||
                                                           (y[q].row == x[p].row && y[q].state < x[p].state)));
    if (take_x) {
      total += x[p++].mass;
    } else if (take_y) {
      total += y[q++].mass;
    } else {
      total += std::abs(x[p++].mass - y[q++].mass);
    }
  }
  return total;
}

}  // namespace

AtomMeasure measure_of(MassEmbedding embedding) { return AtomMeasure(std::move(embedding)); }

AtomDistribution normalize(const AtomMeasure& measure) {
  const double total = measure.total_mass();
  if (total == 0.0) {
    throw Error(ErrorCode::vacuum, "zero-mass measure cannot be normalized");
  }
  AtomDistribution p;
  p.rows_ = measure.embedding().rows();
  p.states_ = measure.embedding().states();
  p.partition_id_ = measure.embedding().partition_id();
  for (Atom a : measure.atoms()) {
    a.mass /= total;
    p.atoms_.push_back(a);
  }
  return p;
}

double total_variation(const AtomMeasure& mu, const AtomMeasure& nu) {
  require_compatible(mu.embedding(), nu.embedding());
  return 0.5 * abs_difference(mu.atoms(), nu.atoms());
}

double total_variation(const AtomDistribution& p, const AtomDistribution& q) {
  if (p.rows() != q.rows() || p.states() != q.states()) {
    throw Error(ErrorCode::shape_mismatch, "distribution shapes differ");
  }
  if (p.partition_id() != q.partition_id()) {
    throw Error(ErrorCode::partition_mismatch, "distributions come from different partitions");
  }
  return 0.5 * abs_difference(p.atoms(), q.atoms());
}

double normalized_discrepancy(const AtomMeasure& mu, const AtomMeasure& nu) {
  const double half = 0.5 * (mu.total_mass() + nu.total_mass());
  if (half == 0.0) throw Error(ErrorCode::vacuum, "normalized discrepancy is undefined for two zero measures");
  return total_variation(mu, nu) / half;
}

TvConsistency tv_consistency(const MassEmbedding& a, const MassEmbedding& b) {
  const PairwiseResult direct = tanimoto(a, b);
  const AtomMeasure mu = measure_of(a);
  const AtomMeasure nu = measure_of(b);
  TvConsistency r;
  r.mass_a = mu.total_mass();
  r.mass_b = nu.total_mass();
  r.tv = total_variation(mu, nu);
  r.j_direct = direct.similarity;
  r.d_direct = direct.distance;
  const double mass = r.mass_a + r.mass_b;
  if (mass == 0.0) {
    r.vacuum = true;
    r.j_via_tv = 1.0;
    r.d_via_tv = 0.0;
  } else {
    r.delta = r.tv / (0.5 * mass);
    r.j_via_tv = (mass - 2 * r.tv) / (mass + 2 * r.tv);
    r.d_via_tv = 2 * r.delta / (1 + r.delta);
  }
  r.residual = std::abs(r.j_direct - r.j_via_tv);
  r.consistent = r.residual <= kTvTolerance && std::abs(r.d_direct - r.d_via_tv) <= kTvTolerance;
  return r;
}

TvConsistency tv_consistency(const Signal& a, const Signal& b, const StatePartition& partition) {
  if (a.size() != b.size()) throw Error(ErrorCode::shape_mismatch, "signal lengths differ");
  return tv_consistency(multistate(a, partition), multistate(b, partition));
}

AtomMeasure pushforward(const AtomMeasure& measure, const CoarseningMap& map) {
  const MassEmbedding& e = measure.embedding();
  if (map.fine_count() != e.states()) {
    throw Error(ErrorCode::invalid_grouping, "coarsening covers " + std::to_string(map.fine_count()) +
                                                 " states but the measure has " + std::to_string(e.states()));
  }
  std::vector<Atom> merged;
  const auto atoms = e.atoms();
  std::size_t a = 0;
  while (a < atoms.size()) {
    const auto row = atoms[a].row;
    std::map<std::uint32_t, double> groups;
    for (; a < atoms.size() && atoms[a].row == row; ++a) {
      groups[static_cast<std::uint32_t>(map(atoms[a].state))] += atoms[a].mass;
    }
    for (const auto& [g, mass] : groups) merged.push_back({row, g, mass});
  }
  // Merging states never adds occupied cells to a row, so the kind's
  // occupancy rule still holds.
  return AtomMeasure(MassEmbedding(e.rows(), map.coarse_count(), e.kind(),
                                   e.partition_id() + "/" + map.fingerprint(), std::move(merged)));
}

}  // namespace peakjac
