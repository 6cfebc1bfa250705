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

#include "peakjac/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "peakjac/error.hpp"

namespace peakjac {

namespace {

void check_length(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_signal, "signal is empty");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::invalid_signal, "signal too long");
  }
}

}  // namespace

Signal::Signal(std::vector<double> values, std::string id) : values_(std::move(values)), id_(std::move(id)) {
  check_length(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::invalid_signal,
                  "signal '" + id_ + "' has a non-finite value at coordinate " + std::to_string(i));
    }
  }
}

double Signal::l1_norm() const noexcept {
  double total = 0.0;
  for (double v : values_) {
    if (v != 0.0) total += std::abs(v);
  }
  return total;
}

ComplexSignal::ComplexSignal(std::vector<std::complex<double>> values, std::string id)
    : values_(std::move(values)), id_(std::move(id)) {
  check_length(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
      throw Error(ErrorCode::invalid_signal,
                  "signal '" + id_ + "' has a non-finite component at coordinate " + std::to_string(i));
    }
  }
}

std::string_view to_string(EmbeddingKind kind) noexcept {
  switch (kind) {
    case EmbeddingKind::sign_split: return "sign_split";
    case EmbeddingKind::multistate: return "multistate";
    case EmbeddingKind::complex_cartesian: return "complex_cartesian";
    case EmbeddingKind::complex_polar: return "complex_polar";
  }
  return "unknown";
}

MassEmbedding::MassEmbedding(std::size_t rows, std::size_t states, EmbeddingKind kind,
                             std::string partition_id, std::vector<Atom> atoms)
    : rows_(rows), states_(states), kind_(kind), partition_id_(std::move(partition_id)), atoms_(std::move(atoms)) {
  const bool single = kind_ != EmbeddingKind::complex_cartesian;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    const Atom& at = atoms_[a];
    if (at.row >= rows_ || at.state >= states_) {
      throw Error(ErrorCode::shape_mismatch, "atom index out of range");
    }
    if (!(at.mass > 0) || !std::isfinite(at.mass)) {
      throw Error(ErrorCode::invalid_signal, "atom masses must be positive and finite");
    }
    if (a > 0) {
      const Atom& prev = atoms_[a - 1];
      if (prev.row > at.row || (prev.row == at.row && prev.state >= at.state)) {
        throw Error(ErrorCode::invalid_argument, "atoms must be strictly ordered by (row, state)");
      }
      if (single && prev.row == at.row) {
        throw Error(ErrorCode::invalid_argument, "row " + std::to_string(at.row) + " has more than one occupied state");
      }
    }
  }
}

double MassEmbedding::total_mass() const noexcept {
  double total = 0.0;
  std::size_t a = 0;
  while (a < atoms_.size()) {
    const auto row = atoms_[a].row;
    double row_sum = 0.0;
    for (; a < atoms_.size() && atoms_[a].row == row; ++a) row_sum += atoms_[a].mass;
    total += row_sum;
  }
  return total;
}

double MassEmbedding::at(std::size_t row, std::size_t state) const {
  if (row >= rows_ || state >= states_) throw Error(ErrorCode::shape_mismatch, "atom index out of range");
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), std::pair{row, state},
                                   [](const Atom& a, const std::pair<std::size_t, std::size_t>& key) {
                                     return a.row < key.first || (a.row == key.first && a.state < key.second);
                                   });
  return it != atoms_.end() && it->row == row && it->state == state ? it->mass : 0.0;
}

std::vector<double> MassEmbedding::dense() const {
  std::vector<double> out(rows_ * states_, 0.0);
  for (const Atom& a : atoms_) out[a.row * states_ + a.state] = a.mass;
  return out;
}

bool MassEmbedding::compatible_with(const MassEmbedding& other) const noexcept {
  return rows_ == other.rows_ && states_ == other.states_ && kind_ == other.kind_ &&
         partition_id_ == other.partition_id_;
}

void require_compatible(const MassEmbedding& a, const MassEmbedding& b) {
  if (a.rows() != b.rows() || a.states() != b.states()) {
    throw Error(ErrorCode::shape_mismatch, "embedding shapes differ: " + std::to_string(a.rows()) + "x" +
                                               std::to_string(a.states()) + " vs " + std::to_string(b.rows()) +
                                               "x" + std::to_string(b.states()));
  }
  if (a.kind() != b.kind() || a.partition_id() != b.partition_id()) {
    throw Error(ErrorCode::partition_mismatch, "embeddings come from different partitions (" +
                                                   a.partition_id() + " vs " + b.partition_id() + ")");
  }
}

MassEmbedding sign_split(const Signal& signal) {
  static const StatePartition partition = StatePartition::sign_split();
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double v = signal[i];
    const auto row = static_cast<std::uint32_t>(i);
    if (v > 0) {
      atoms.push_back({row, 0, v});
    } else if (v < 0) {
      atoms.push_back({row, 1, -v});
    }
  }
  return MassEmbedding(signal.size(), 2, EmbeddingKind::sign_split, partition.id(), std::move(atoms));
}

MassEmbedding multistate(const Signal& signal, const StatePartition& partition) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double v = signal[i];
    const auto k = partition.classify(v);
    if (v != 0.0) atoms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k), std::abs(v)});
  }
  return MassEmbedding(signal.size(), partition.size(), EmbeddingKind::multistate, partition.id(),
                       std::move(atoms));
}

MassEmbedding complex_cartesian(const ComplexSignal& signal) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const auto row = static_cast<std::uint32_t>(i);
    const double a = signal[i].real();
    const double b = signal[i].imag();
    if (a > 0) atoms.push_back({row, 0, a});
    if (a < 0) atoms.push_back({row, 1, -a});
    if (b > 0) atoms.push_back({row, 2, b});
    if (b < 0) atoms.push_back({row, 3, -b});
  }
  return MassEmbedding(signal.size(), 4, EmbeddingKind::complex_cartesian, std::string(kCartesianPartitionId),
                       std::move(atoms));
}

MassEmbedding complex_polar(const ComplexSignal& signal, const AngularPartition& sectors) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const auto& z = signal[i];
    const double r = std::abs(z);
    if (r == 0.0) continue;
    const auto k = sectors.classify(principal_argument(z.real(), z.imag()));
    atoms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k), r});
  }
  return MassEmbedding(signal.size(), sectors.size(), EmbeddingKind::complex_polar, sectors.id(),
                       std::move(atoms));
}

}  // namespace peakjac
