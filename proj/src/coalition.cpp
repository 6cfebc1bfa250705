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

#include "peakjac/coalition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "peakjac/error.hpp"

namespace peakjac {

namespace {

struct KeyedMass {
  std::uint64_t key;  // row * K + state
  double mass;
};

using AtomList = std::vector<KeyedMass>;

std::vector<AtomList> keyed_atoms(std::span<const MassEmbedding> embeddings) {
  std::vector<AtomList> out;
  out.reserve(embeddings.size());
  for (const auto& e : embeddings) {
    AtomList list;
    list.reserve(e.atoms().size());
    for (const Atom& a : e.atoms()) {
      list.push_back({static_cast<std::uint64_t>(a.row) * e.states() + a.state, a.mass});
    }
    out.push_back(std::move(list));
  }
  return out;
}

// Atoms present in both lists, carrying the smaller mass.
void intersect(const AtomList& a, const AtomList& b, AtomList& out) {
  out.clear();
  std::size_t p = 0, q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p].key < b[q].key) {
      ++p;
    } else if (b[q].key < a[p].key) {
      ++q;
    } else {
      out.push_back({a[p].key, std::min(a[p].mass, b[q].mass)});
      ++p;
      ++q;
    }
  }
}

void require_shared_partition(std::span<const MassEmbedding> embeddings) {
  if (embeddings.empty()) throw Error(ErrorCode::invalid_argument, "no signals supplied");
  for (const auto& e : embeddings) require_compatible(embeddings.front(), e);
}

void check_width(std::size_t m, std::size_t limit, const char* what) {
  if (m > limit) {
    throw Error(ErrorCode::coalition_cap, std::to_string(m) + " signals exceeds the " + what + " of " +
                                              std::to_string(limit));
  }
}

void collect_masks(std::size_t m, std::size_t max_order, std::uint64_t mask, std::size_t next, std::size_t depth,
                   std::vector<std::uint64_t>& out) {
  for (std::size_t j = next; j < m; ++j) {
    const std::uint64_t child = mask | (std::uint64_t{1} << j);
    out.push_back(child);
    if (depth + 1 < max_order) collect_masks(m, max_order, child, j + 1, depth + 1, out);
  }
}

// Visits every requested coalition once with its co-occupied atoms (each
// carrying the coalition-wide minimum) and per-thread scratch for the
// per-state subtotals. Writes from different coalitions never alias.
class Enumerator {
 public:
  Enumerator(std::span<const MassEmbedding> embeddings)
      : atoms_(keyed_atoms(embeddings)), states_(embeddings.front().states()) {}

  std::size_t signal_count() const noexcept { return atoms_.size(); }

  template <typename Emit>
  void depth_first(std::size_t max_order, Emit&& emit) const {
    const std::size_t m = atoms_.size();
    detail::parallel_for(m, [&](std::size_t first) {
      std::vector<AtomList> levels(max_order + 1);
      std::vector<double> scratch(states_);
      levels[1] = atoms_[first];
      visit(std::uint64_t{1} << first, first, 1, max_order, levels, scratch, emit);
    });
  }

  template <typename Emit>
  void listed(std::span<const CoalitionId> ids, Emit&& emit) const {
    detail::parallel_for(ids.size(), [&](std::size_t c) {
      auto members = ids[c].members();
      std::sort(members.begin(), members.end(),
                [&](std::size_t x, std::size_t y) { return atoms_[x].size() < atoms_[y].size(); });
      AtomList support = atoms_[members.front()];
      AtomList next;
      for (std::size_t t = 1; t < members.size() && !support.empty(); ++t) {
        intersect(support, atoms_[members[t]], next);
        support.swap(next);
      }
      std::vector<double> scratch(states_);
      emit(ids[c], state_sums(support, scratch));
    });
  }

 private:
  std::span<const double> state_sums(const AtomList& support, std::vector<double>& scratch) const {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    for (const auto& a : support) scratch[a.key % states_] += a.mass;
    return scratch;
  }

  template <typename Emit>
  void visit(std::uint64_t mask, std::size_t last, std::size_t depth, std::size_t max_order,
             std::vector<AtomList>& levels, std::vector<double>& scratch, Emit& emit) const {
    emit(CoalitionId(mask), state_sums(levels[depth], scratch));
    if (depth == max_order) return;
    for (std::size_t j = last + 1; j < atoms_.size(); ++j) {
      intersect(levels[depth], atoms_[j], levels[depth + 1]);
      visit(mask | (std::uint64_t{1} << j), j, depth + 1, max_order, levels, scratch, emit);
    }
  }

  std::vector<AtomList> atoms_;
  std::size_t states_;
};

// Builds the empty table for a selection and validates its limits.
CoalitionTable table_for(std::size_t m, const CoalitionSelection& which, const CoalitionOptions& options) {
  switch (which.mode) {
    case CoalitionSelection::Mode::all: {
      const std::size_t cap = options.force ? kHardCoalitionCap : std::min(options.max_signals, kHardCoalitionCap);
      check_width(m, cap, options.force ? "hard coalition ceiling" : "coalition cap (use force to override)");
      return CoalitionTable::complete(m);
    }
    case CoalitionSelection::Mode::up_to_order: {
      check_width(m, 64, "bitmask width");
      if (which.max_order == 0) throw Error(ErrorCode::invalid_argument, "coalition order must be at least 1");
      const std::size_t r = std::min(which.max_order, m);
      std::vector<std::uint64_t> masks;
      collect_masks(m, r, 0, 0, 0, masks);
      return CoalitionTable::selection(m, std::move(masks));
    }
    case CoalitionSelection::Mode::explicit_list: {
      check_width(m, 64, "bitmask width");
      std::vector<std::uint64_t> masks;
      for (const auto& id : which.coalitions) {
        if (m < 64 && (id.mask() >> m) != 0) {
          throw Error(ErrorCode::invalid_argument, "coalition {" + id.label() + "} names a signal beyond " +
                                                       std::to_string(m));
        }
        masks.push_back(id.mask());
      }
      return CoalitionTable::selection(m, std::move(masks));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown coalition selection");
}

template <typename Emit>
void run_selection(const Enumerator& e, const CoalitionSelection& which, Emit&& emit) {
  const std::size_t m = e.signal_count();
  switch (which.mode) {
    case CoalitionSelection::Mode::all: e.depth_first(m, emit); break;
    case CoalitionSelection::Mode::up_to_order: e.depth_first(std::min(which.max_order, m), emit); break;
    case CoalitionSelection::Mode::explicit_list: e.listed(which.coalitions, emit); break;
  }
}

}  // namespace

CoalitionId::CoalitionId(std::uint64_t mask) : mask_(mask) {
  if (mask == 0) throw Error(ErrorCode::invalid_argument, "coalition must be nonempty");
}

CoalitionId CoalitionId::of(std::initializer_list<std::size_t> members) {
  return of(std::span<const std::size_t>(members.begin(), members.size()));
}

CoalitionId CoalitionId::of(std::span<const std::size_t> members) {
  std::uint64_t mask = 0;
  for (std::size_t j : members) {
    if (j >= 64) throw Error(ErrorCode::invalid_argument, "signal index " + std::to_string(j) + " exceeds 63");
    mask |= std::uint64_t{1} << j;
  }
  return CoalitionId(mask);
}

std::vector<std::size_t> CoalitionId::members() const {
  std::vector<std::size_t> out;
  for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

std::string CoalitionId::label() const {
  std::string s;
  for (std::size_t j : members()) {
    if (!s.empty()) s += ',';
    s += std::to_string(j + 1);
  }
  return s;
}

CoalitionTable CoalitionTable::complete(std::size_t m) {
  if (m == 0 || m > kHardCoalitionCap) {
    throw Error(ErrorCode::coalition_cap, "complete coalition table needs 1..30 signals");
  }
  CoalitionTable t;
  t.m_ = m;
  t.complete_ = true;
  t.values_.assign(std::size_t{1} << m, 0.0);
  return t;
}

CoalitionTable CoalitionTable::selection(std::size_t m, std::vector<std::uint64_t> masks) {
  if (m == 0 || m > 64) throw Error(ErrorCode::coalition_cap, "coalition tables support 1..64 signals");
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  CoalitionTable t;
  t.m_ = m;
  t.masks_ = std::move(masks);
  t.values_.assign(t.masks_.size(), 0.0);
  return t;
}

std::size_t CoalitionTable::size() const noexcept { return complete_ ? values_.size() - 1 : values_.size(); }

std::size_t CoalitionTable::slot(std::uint64_t mask) const {
  if (complete_) return mask < values_.size() && mask != 0 ? mask : values_.size();
  const auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  return it != masks_.end() && *it == mask ? static_cast<std::size_t>(it - masks_.begin()) : values_.size();
}

bool CoalitionTable::contains(CoalitionId id) const noexcept { return slot(id.mask()) < values_.size(); }

double CoalitionTable::at(CoalitionId id) const {
  const auto s = slot(id.mask());
  if (s >= values_.size()) throw Error(ErrorCode::missing_coalition, "no value for coalition {" + id.label() + "}");
  return values_[s];
}

void CoalitionTable::set(CoalitionId id, double value) {
  const auto s = slot(id.mask());
  if (s >= values_.size()) throw Error(ErrorCode::missing_coalition, "no slot for coalition {" + id.label() + "}");
  values_[s] = value;
}

std::vector<std::pair<CoalitionId, double>> CoalitionTable::entries() const {
  std::vector<std::pair<CoalitionId, double>> out;
  if (complete_) {
    for (std::uint64_t mask = 1; mask < values_.size(); ++mask) out.emplace_back(CoalitionId(mask), values_[mask]);
  } else {
    for (std::size_t s = 0; s < masks_.size(); ++s) out.emplace_back(CoalitionId(masks_[s]), values_[s]);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.order() != y.first.order()) return x.first.order() < y.first.order();
    return x.first.members() < y.first.members();
  });
  return out;
}

CoalitionTable cumulative_intersections(std::span<const MassEmbedding> embeddings, const CoalitionSelection& which,
                                        const CoalitionOptions& options) {
  require_shared_partition(embeddings);
  CoalitionTable table = table_for(embeddings.size(), which, options);
  Enumerator e(embeddings);
  run_selection(e, which, [&](CoalitionId id, std::span<const double> by_state) {
    double total = 0.0;
    for (double v : by_state) total += v;
    table.set(id, total);
  });
  return table;
}

CoalitionTable mobius_invert(const CoalitionTable& cumulative) {
  const std::size_t m = cumulative.signal_count();
  if (!cumulative.is_complete()) {
    if (m > kHardCoalitionCap || cumulative.size() != (std::size_t{1} << m) - 1) {
      throw Error(ErrorCode::missing_coalition, "Moebius inversion needs N(S) for every nonempty coalition");
    }
  }
  CoalitionTable out = CoalitionTable::complete(m);
  const std::uint64_t full = std::uint64_t{1} << m;
  std::vector<double> f(full, 0.0);
  for (std::uint64_t mask = 1; mask < full; ++mask) f[mask] = cumulative.at(CoalitionId(mask));
  // In-place superset Moebius transform: after processing bit b, f[S]
  // holds the alternating sum over supersets that differ from S only in
  // bits <= b.
  for (std::size_t b = 0; b < m; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << b;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      if ((mask & bit) == 0) f[mask] -= f[mask | bit];
    }
  }
  for (std::uint64_t mask = 1; mask < full; ++mask) out.set(CoalitionId(mask), f[mask]);
  return out;
}

GroupedIntersections aggregate_post_intersection(std::span<const MassEmbedding> embeddings,
                                                 const CoarseningMap& groups, const CoalitionSelection& which,
                                                 const CoalitionOptions& options) {
  require_shared_partition(embeddings);
  if (groups.fine_count() != embeddings.front().states()) {
    throw Error(ErrorCode::invalid_grouping, "grouping covers " + std::to_string(groups.fine_count()) +
                                                 " states but embeddings have " +
                                                 std::to_string(embeddings.front().states()));
  }
  GroupedIntersections out{groups.names(), {}, table_for(embeddings.size(), which, options)};
  out.per_group.assign(groups.coarse_count(), out.total);
  Enumerator e(embeddings);
  run_selection(e, which, [&](CoalitionId id, std::span<const double> by_state) {
    double total = 0.0;
    for (double v : by_state) total += v;
    out.total.set(id, total);
    for (std::size_t g = 0; g < groups.coarse_count(); ++g) {
      double sum = 0.0;
      for (std::size_t k = 0; k < by_state.size(); ++k) {
        if (groups(k) == g) sum += by_state[k];
      }
      out.per_group[g].set(id, sum);
    }
  });
  return out;
}

CoalitionReport budget_report(std::span<const MassEmbedding> embeddings, const BudgetOptions& options,
                              std::vector<std::string> ids) {
  require_shared_partition(embeddings);
  const std::size_t m = embeddings.size();
  CoalitionReport report;
  report.m = m;
  if (ids.empty()) {
    for (std::size_t j = 0; j < m; ++j) ids.push_back(std::to_string(j + 1));
  }
  if (ids.size() != m) throw Error(ErrorCode::invalid_argument, "signal id count does not match signal count");
  report.signal_ids = std::move(ids);

  if (options.groups) {
    auto grouped = aggregate_post_intersection(embeddings, *options.groups, CoalitionSelection::all(),
                                               options.coalitions);
    report.cumulative = std::move(grouped.total);
    for (std::size_t g = 0; g < grouped.per_group.size(); ++g) {
      auto exclusive = mobius_invert(grouped.per_group[g]);
      report.groups.push_back({grouped.group_names[g], std::move(grouped.per_group[g]), std::move(exclusive)});
    }
  } else {
    report.cumulative = cumulative_intersections(embeddings, CoalitionSelection::all(), options.coalitions);
  }
  report.exclusive = mobius_invert(report.cumulative);

  double max_cumulative = 0.0;
  for (const auto& [id, v] : report.cumulative.entries()) max_cumulative = std::max(max_cumulative, v);
  report.min_exclusive = std::numeric_limits<double>::infinity();
  for (const auto& [id, v] : report.exclusive.entries()) report.min_exclusive = std::min(report.min_exclusive, v);
  report.nonnegative_ok = report.min_exclusive >= -kNonnegativeSlack * max_cumulative;

  const std::uint64_t full = std::uint64_t{1} << m;
  for (std::size_t j = 0; j < m; ++j) {
    const double norm = embeddings[j].total_mass();
    double sum = 0.0;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      if ((mask >> j & 1U) != 0) sum += report.exclusive.at(CoalitionId(mask));
    }
    report.norms.push_back(norm);
    report.closure_residuals.push_back(norm - sum);
    if (!(std::abs(norm - sum) <= kClosureTolerance * norm)) report.closure_ok = false;
  }
  return report;
}

CoalitionReport budget_report(std::span<const Signal> signals, const StatePartition& partition,
                              const BudgetOptions& options) {
  std::vector<MassEmbedding> embedded;
  std::vector<std::string> ids;
  embedded.reserve(signals.size());
  for (const auto& s : signals) {
    embedded.push_back(multistate(s, partition));
    ids.push_back(s.id());
  }
  const bool named = std::all_of(ids.begin(), ids.end(), [](const auto& id) { return !id.empty(); });
  return budget_report(embedded, options, named ? std::move(ids) : std::vector<std::string>{});
}

CoherenceProfile coherence(std::span<const MassEmbedding> embeddings, std::size_t top_k) {
  require_shared_partition(embeddings);
  if (embeddings.size() < 2) throw Error(ErrorCode::invalid_argument, "coherence needs at least two signals");
  const std::size_t n = embeddings.front().rows();
  const std::size_t k = embeddings.front().states();
  const std::size_t m = embeddings.size();
  std::vector<std::uint32_t> count(n * k, 0);
  std::vector<double> lo(n * k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n * k, 0.0);
  for (const auto& e : embeddings) {
    for (const Atom& a : e.atoms()) {
      const std::size_t cell = static_cast<std::size_t>(a.row) * k + a.state;
      ++count[cell];
      lo[cell] = std::min(lo[cell], a.mass);
      hi[cell] = std::max(hi[cell], a.mass);
    }
  }
  CoherenceProfile p;
  p.per_index_incoherence.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t cell = i * k + s;
      if (count[cell] == 0) continue;
      const double shared = count[cell] == m ? lo[cell] : 0.0;
      p.grand_intersection += shared;
      p.grand_union += hi[cell];
      p.per_index_incoherence[i] += hi[cell] - shared;
    }
  }
  const auto r = [&] {
    const bool degenerate = p.grand_union == 0.0;
    return degenerate ? 1.0 : p.grand_intersection / p.grand_union;
  }();
  p.grand_similarity = r;
  p.grand_distance = 1.0 - r;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return p.per_index_incoherence[x] > p.per_index_incoherence[y];
  });
  order.resize(std::min(top_k, n));
  p.top_indices = std::move(order);
  return p;
}

}  // namespace peakjac
