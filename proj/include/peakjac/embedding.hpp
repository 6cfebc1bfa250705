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
 * Nonnegative coordinate-state mass embeddings.
 *
 *   sign_split(X)          n x 2, channels (x+, x-)
 *   multistate(X, B)       n x K, [i,k] = |x_i| 1{x_i in B_k}
 *   complex_cartesian(Z)   n x 4, channels (a+, a-, b+, b-) for z = a + ib
 *   complex_polar(Z, Th)   n x K, [i,k] = |z_i| 1{arg z_i in Theta_k}
 *
 * Every embedding preserves L1 mass: the stored masses sum to ||X||_1
 * (Cartesian: sum |a_i| + |b_i|, polar: sum |z_i|). Storage is sparse and
 * sorted by (row, state); zero masses are never stored.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peakjac/partition.hpp"

namespace peakjac {

/// A finite real signal. Construction rejects empty or non-finite input.
class Signal {
 public:
  explicit Signal(std::vector<double> values, std::string id = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::string& id() const noexcept { return id_; }

  /// Sum of |x_i| over nonzero entries, in coordinate order.
  double l1_norm() const noexcept;

 private:
  std::vector<double> values_;
  std::string id_;
};

class ComplexSignal {
 public:
  explicit ComplexSignal(std::vector<std::complex<double>> values, std::string id = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const std::complex<double>> values() const noexcept { return values_; }
  const std::complex<double>& operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::string& id() const noexcept { return id_; }

 private:
  std::vector<std::complex<double>> values_;
  std::string id_;
};

enum class EmbeddingKind { sign_split, multistate, complex_cartesian, complex_polar };

std::string_view to_string(EmbeddingKind kind) noexcept;

/// One occupied (coordinate, state) cell.
struct Atom {
  std::uint32_t row;
  std::uint32_t state;
  double mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

class MassEmbedding {
 public:
  /// Validates ordering, bounds and positivity of `atoms`; for the single
  /// occupancy kinds also checks at most one atom per row.
  MassEmbedding(std::size_t rows, std::size_t states, EmbeddingKind kind, std::string partition_id,
                std::vector<Atom> atoms);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t states() const noexcept { return states_; }
  EmbeddingKind kind() const noexcept { return kind_; }
  const std::string& partition_id() const noexcept { return partition_id_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  /// Sum of per-row subtotals, in row order.
  double total_mass() const noexcept;

  double at(std::size_t row, std::size_t state) const;

  /// Row-major rows x states copy, zeros included.
  std::vector<double> dense() const;

  /// Same n, K, kind and partition tag.
  bool compatible_with(const MassEmbedding& other) const noexcept;

  friend bool operator==(const MassEmbedding&, const MassEmbedding&) = default;

 private:
  std::size_t rows_;
  std::size_t states_;
  EmbeddingKind kind_;
  std::string partition_id_;
  std::vector<Atom> atoms_;
};

/// Throws Error(shape_mismatch / partition_mismatch) when the two embeddings
/// cannot be compared atom by atom.
void require_compatible(const MassEmbedding& a, const MassEmbedding& b);

MassEmbedding sign_split(const Signal& signal);
MassEmbedding multistate(const Signal& signal, const StatePartition& partition);
MassEmbedding complex_cartesian(const ComplexSignal& signal);
MassEmbedding complex_polar(const ComplexSignal& signal, const AngularPartition& sectors);

/// Partition tag carried by complex_cartesian embeddings.
inline constexpr std::string_view kCartesianPartitionId = "complex_cartesian";

}  // namespace peakjac
