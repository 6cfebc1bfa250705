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

#include "peakjac/pairwise.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "peakjac/error.hpp"
#include "peakjac/format.hpp"
#include "peakjac/simd/kernels.hpp"

namespace peakjac {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::shape_mismatch,
                "signal lengths differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::invalid_argument, "lambda must be positive and finite, got " + format_double(lambda));
  }
}

double kernel_value(const PairwiseResult& r, const KernelSpec& k) {
  return k.kind == KernelKind::peak ? r.similarity : std::exp(-k.lambda * r.distance);
}

// Fills the upper triangle (rows in parallel) and mirrors it.
template <typename Entry>
Eigen::MatrixXd symmetric_fill(std::size_t m, Entry&& entry) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  detail::parallel_for(m, [&](std::size_t i) {
    for (std::size_t j = i; j < m; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(i, j);
    }
  });
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) out(i, j) = out(j, i);
  }
  return out;
}

}  // namespace

PairwiseResult PairwiseResult::from_sums(double intersection, double union_mass) noexcept {
  PairwiseResult r;
  r.intersection = intersection;
  r.union_mass = union_mass;
  r.degenerate = union_mass == 0.0;
  r.similarity = r.degenerate ? 1.0 : intersection / union_mass;
  r.distance = 1.0 - r.similarity;
  return r;
}

PairwiseResult tanimoto(const MassEmbedding& u, const MassEmbedding& v) {
  require_compatible(u, v);
  const auto ua = u.atoms();
  const auto va = v.atoms();
  double inter = 0.0;
  double uni = 0.0;
  std::size_t p = 0, q = 0;
  // Per-row subtotals are formed first, then added to the running totals.
  while (p < ua.size() || q < va.size()) {
    const auto row = std::min(p < ua.size() ? ua[p].row : UINT32_MAX, q < va.size() ? va[q].row : UINT32_MAX);
    double row_min = 0.0;
    double row_max = 0.0;
    while ((p < ua.size() && ua[p].row == row) || (q < va.size() && va[q].row == row)) {
      const bool has_u = p < ua.size() && ua[p].row == row;
      const bool has_v = q < va.size() && va[q].row == row;
      if (has_u && has_v && ua[p].state == va[q].state) {
        row_min += std::min(ua[p].mass, va[q].mass);
        row_max += std::max(ua[p].mass, va[q].mass);
        ++p;
        ++q;
      } else if (has_u && (!has_v || ua[p].state < va[q].state)) {
        row_max += ua[p++].mass;
      } else {
        row_max += va[q++].mass;
      }
    }
    inter += row_min;
    uni += row_max;
  }
  return PairwiseResult::from_sums(inter, uni);
}

double peak_intersection(const Signal& a, const Signal& b) {
  require_same_length(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s = sign_of(a[i]);
    if (s != 0 && s == sign_of(b[i])) total += std::min(std::abs(a[i]), std::abs(b[i]));
  }
  return total;
}

double peak_union(const Signal& a, const Signal& b) {
  require_same_length(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double pos = std::max(std::max(a[i], 0.0), std::max(b[i], 0.0));
    const double neg = std::max(std::max(-a[i], 0.0), std::max(-b[i], 0.0));
    total += pos + neg;
  }
  return total;
}

PairwiseResult d_peak(const Signal& a, const Signal& b) {
  require_same_length(a.size(), b.size());
  const PairwiseResult r = tanimoto(sign_split(a), sign_split(b));
  const double direct = peak_intersection(a, b);
  if (direct != r.intersection) {
    throw Error(ErrorCode::invariant_violation, "sign-aware intersection " + format_double(direct) +
                                                    " disagrees with embedded numerator " +
                                                    format_double(r.intersection));
  }
  return r;
}

PairwiseResult d_multi(const Signal& a, const Signal& b, const StatePartition& partition) {
  require_same_length(a.size(), b.size());
  return tanimoto(multistate(a, partition), multistate(b, partition));
}

PairwiseResult d_complex(const ComplexSignal& z, const ComplexSignal& w) {
  require_same_length(z.size(), w.size());
  return tanimoto(complex_cartesian(z), complex_cartesian(w));
}

PairwiseResult d_complex(const ComplexSignal& z, const ComplexSignal& w, const AngularPartition& sectors) {
  require_same_length(z.size(), w.size());
  return tanimoto(complex_polar(z, sectors), complex_polar(w, sectors));
}

double radial_kernel(const Signal& a, const Signal& b, double lambda) {
  require_lambda(lambda);
  return std::exp(-lambda * d_peak(a, b).distance);
}

PsdCheck check_psd(const Eigen::MatrixXd& m, double tolerance) {
  PsdCheck out;
  if (m.rows() == 0 || static_cast<std::size_t>(m.rows()) > kPsdCheckLimit) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::invariant_violation, "eigenvalue solve did not converge");
  }
  const auto& ev = solver.eigenvalues();  // ascending
  out.checked = true;
  out.min_eigenvalue = ev(0);
  out.max_eigenvalue = ev(ev.size() - 1);
  const double scale = std::max({1.0, std::abs(out.min_eigenvalue), std::abs(out.max_eigenvalue)});
  out.ok = out.min_eigenvalue >= -tolerance * scale;
  return out;
}

GramMatrix gram(std::span<const Signal> signals, KernelSpec kernel, const StatePartition* partition) {
  if (signals.empty()) throw Error(ErrorCode::invalid_argument, "gram needs at least one signal");
  if (kernel.kind == KernelKind::radial) require_lambda(kernel.lambda);
  for (const auto& s : signals) require_same_length(signals.front().size(), s.size());
  if (partition != nullptr) {
    std::vector<MassEmbedding> embedded;
    embedded.reserve(signals.size());
    for (const auto& s : signals) embedded.push_back(multistate(s, *partition));
    return gram(std::span<const MassEmbedding>(embedded), kernel);
  }
  GramMatrix g;
  g.kernel = kernel;
  g.values = symmetric_fill(signals.size(), [&](std::size_t i, std::size_t j) {
    const auto sums = simd::peak_sums(signals[i].values(), signals[j].values());
    return kernel_value(PairwiseResult::from_sums(sums.intersection, sums.union_mass), kernel);
  });
  g.psd = check_psd(g.values);
  return g;
}

GramMatrix gram(std::span<const MassEmbedding> embeddings, KernelSpec kernel) {
  if (embeddings.empty()) throw Error(ErrorCode::invalid_argument, "gram needs at least one embedding");
  if (kernel.kind == KernelKind::radial) require_lambda(kernel.lambda);
  for (const auto& e : embeddings) require_compatible(embeddings.front(), e);
  std::vector<std::vector<double>> dense;
  dense.reserve(embeddings.size());
  for (const auto& e : embeddings) dense.push_back(e.dense());
  GramMatrix g;
  g.kernel = kernel;
  g.values = symmetric_fill(embeddings.size(), [&](std::size_t i, std::size_t j) {
    const auto sums = simd::minmax_sums(dense[i], dense[j]);
    return kernel_value(PairwiseResult::from_sums(sums.intersection, sums.union_mass), kernel);
  });
  g.psd = check_psd(g.values);
  return g;
}

Eigen::MatrixXd distance_matrix(std::span<const MassEmbedding> embeddings) {
  for (const auto& e : embeddings) require_compatible(embeddings.front(), e);
  return symmetric_fill(embeddings.size(), [&](std::size_t i, std::size_t j) {
    return i == j ? 0.0 : tanimoto(embeddings[i], embeddings[j]).distance;
  });
}

}  // namespace peakjac
