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

// peakjac: command-line front end.
//
//   peakjac embed     --input sig.csv [--partition p.json]
//   peakjac dist      --input sig.csv [--partition p.json]
//   peakjac gram      --input sig.csv [--partition p.json]
//   peakjac kernel    --input sig.csv --lambda 0.5
//   peakjac budgets   --input sig.csv --partition p.json [--groups g.json]
//   peakjac coherence --input sig.csv --top-k 5
//   peakjac tvcheck   --input sig.csv --partition p.json
//   peakjac casestudy --shift 0.25 --period 1 --samples 400
//
// Exit status: 0 on success, 10 + error index on a library error (see
// ErrorCode), 2 on a usage error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "peakjac/casestudy.hpp"
#include "peakjac/coalition.hpp"
#include "peakjac/embedding.hpp"
#include "peakjac/error.hpp"
#include "peakjac/format.hpp"
#include "peakjac/io.hpp"
#include "peakjac/pairwise.hpp"
#include "peakjac/probabilistic.hpp"

namespace {

using nlohmann::json;
using namespace peakjac;

constexpr int kExitBase = 10;
constexpr const char* kVersion = "1.0.0";

int exit_code(ErrorCode code) { return kExitBase + static_cast<int>(code); }

struct Common {
  std::string input;
  std::string partition;
  std::string output;
  std::string format;
  bool reproducible = false;
  std::string complex_mode;
  std::string sectors;
};

struct Flags {
  double lambda = 1.0;
  std::size_t max_coalition = kDefaultCoalitionCap;
  bool force = false;
  std::string groups;
  std::size_t top_k = 10;
  double shift = 0.25;
  double period = 1.0;
  std::size_t samples = 400;
};

void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
  if (needs_input) {
    cmd->add_option("--input", c.input, "signal file (.csv or .json)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--partition", c.partition, "state partition JSON (default: sign split)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--complex", c.complex_mode, "read complex signals")
        ->check(CLI::IsMember({"cartesian", "polar"}));
    cmd->add_option("--sectors", c.sectors, "angular partition JSON for --complex polar (default: quadrants)")
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--output", c.output, "output file (default: stdout)");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--reproducible", c.reproducible, "omit the timestamp field");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

json envelope(const std::string& command, const Common& c, json body) {
  json out = {{"tool", "peakjac"}, {"version", kVersion}, {"command", command}};
  if (!c.reproducible) out["generated_at"] = timestamp();
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_atomic(c.output, text);
  }
}

std::string fmt(double v) { return format_double(v); }

// Everything a command needs once the input has been read and embedded.
struct Batch {
  SignalSet signals;
  std::optional<StatePartition> partition;
  std::vector<MassEmbedding> embeddings;
  std::vector<std::string> ids;
};

Batch load_batch(const Common& c) {
  Batch b;
  const bool is_json = c.input.size() >= 5 && c.input.compare(c.input.size() - 5, 5, ".json") == 0;
  const bool complex_input = !c.complex_mode.empty();
  b.signals = load_signals(c.input, is_json ? InputFormat::json : InputFormat::csv, complex_input);
  b.ids = b.signals.ids();
  if (complex_input) {
    if (!c.partition.empty()) {
      throw Error(ErrorCode::invalid_argument, "--partition applies to real signals; use --sectors for complex input");
    }
    if (c.complex_mode == "cartesian") {
      if (!c.sectors.empty()) throw Error(ErrorCode::invalid_argument, "--sectors requires --complex polar");
      for (const auto& z : b.signals.complex) b.embeddings.push_back(complex_cartesian(z));
    } else {
      const AngularPartition sectors =
          c.sectors.empty() ? AngularPartition::quadrants() : angular_partition_from_json(read_json_file(c.sectors));
      for (const auto& z : b.signals.complex) b.embeddings.push_back(complex_polar(z, sectors));
    }
    return b;
  }
  if (!c.sectors.empty()) throw Error(ErrorCode::invalid_argument, "--sectors requires --complex polar");
  if (c.partition.empty()) {
    for (const auto& x : b.signals.real) b.embeddings.push_back(sign_split(x));
  } else {
    b.partition.emplace(partition_from_json(read_json_file(c.partition)));
    for (const auto& x : b.signals.real) b.embeddings.push_back(multistate(x, *b.partition));
  }
  return b;
}

std::string matrix_csv(const std::vector<std::string>& ids, const Eigen::MatrixXd& m) {
  std::string out = "id";
  for (const auto& id : ids) out += ',' + id;
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += ',' + fmt(m(i, j));
    out += '\n';
  }
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_embed(const Common& c) {
  const Batch b = load_batch(c);
  if (c.format == "csv") {
    std::string out = "id,i,k,mass\n";
    for (std::size_t s = 0; s < b.embeddings.size(); ++s) {
      for (const Atom& a : b.embeddings[s].atoms()) {
        out += b.ids[s] + ',' + std::to_string(a.row) + ',' + std::to_string(a.state) + ',' + fmt(a.mass) + '\n';
      }
    }
    emit(c, out);
    return 0;
  }
  json list = json::array();
  for (std::size_t s = 0; s < b.embeddings.size(); ++s) list.push_back(embedding_to_json(b.embeddings[s], b.ids[s]));
  json body = {{"embeddings", std::move(list)}};
  if (b.partition) body["partition"] = partition_to_json(*b.partition);
  emit(c, envelope("embed", c, std::move(body)).dump(2) + "\n");
  return 0;
}

int run_dist(const Common& c) {
  const Batch b = load_batch(c);
  const Eigen::MatrixXd d = distance_matrix(b.embeddings);
  if (c.format == "json") {
    emit(c, envelope("dist", c, {{"ids", b.ids}, {"distance", matrix_json(d)}}).dump(2) + "\n");
  } else {
    emit(c, matrix_csv(b.ids, d));
  }
  return 0;
}

int run_gram(const Common& c, const std::string& command, KernelSpec spec) {
  const Batch b = load_batch(c);
  const GramMatrix g = gram(b.embeddings, spec);
  if (c.format == "json") {
    json psd = {{"checked", g.psd.checked}, {"ok", g.psd.ok}};
    if (g.psd.checked) {
      psd["min_eigenvalue"] = g.psd.min_eigenvalue;
      psd["max_eigenvalue"] = g.psd.max_eigenvalue;
    }
    json body = {{"ids", b.ids}, {"kernel", spec.kind == KernelKind::peak ? "peak" : "radial"}, {"psd", psd},
                 {"gram", matrix_json(g.values)}};
    if (spec.kind == KernelKind::radial) body["lambda"] = spec.lambda;
    emit(c, envelope(command, c, std::move(body)).dump(2) + "\n");
  } else {
    std::string out;
    if (g.psd.checked) {
      out += "# min_eigenvalue=" + fmt(g.psd.min_eigenvalue) + " max_eigenvalue=" + fmt(g.psd.max_eigenvalue) +
             " psd=" + (g.psd.ok ? "ok" : "FAILED") + '\n';
    } else {
      out += "# psd=unchecked\n";
    }
    emit(c, out + matrix_csv(b.ids, g.values));
  }
  if (!g.psd.ok) {
    throw Error(ErrorCode::invariant_violation,
                "gram matrix has min eigenvalue " + fmt(g.psd.min_eigenvalue) + " below tolerance");
  }
  return 0;
}

int run_budgets(const Common& c, const Flags& f) {
  const Batch b = load_batch(c);
  BudgetOptions options;
  options.coalitions.max_signals = f.max_coalition;
  options.coalitions.force = f.force;
  if (!f.groups.empty()) {
    const std::size_t states = b.embeddings.front().states();
    options.groups.emplace(grouping_from_json(read_json_file(f.groups), states));
  }
  const CoalitionReport report = budget_report(b.embeddings, options, b.ids);
  if (c.format == "json") {
    emit(c, envelope("budgets", c, report_to_json(report)).dump(2) + "\n");
  } else if (c.format == "csv") {
    emit(c, report_to_csv(report));
  } else if (c.output.empty()) {
    emit(c, report_to_text(report));
  } else {
    emit(c, envelope("budgets", c, report_to_json(report)).dump(2) + "\n");
  }
  if (!report.closure_ok) {
    double worst = 0.0;
    for (double r : report.closure_residuals) worst = std::max(worst, std::abs(r));
    throw Error(ErrorCode::invariant_violation, "budget closure residual " + fmt(worst) + " exceeds tolerance");
  }
  if (!report.nonnegative_ok) {
    throw Error(ErrorCode::invariant_violation, "exclusive budget " + fmt(report.min_exclusive) + " is negative");
  }
  return 0;
}

int run_coherence(const Common& c, const Flags& f) {
  const Batch b = load_batch(c);
  const CoherenceProfile p = coherence(b.embeddings, f.top_k);
  if (c.format == "csv") {
    std::string out = "# grand_intersection=" + fmt(p.grand_intersection) + " grand_union=" + fmt(p.grand_union) +
                      " grand_similarity=" + fmt(p.grand_similarity) + '\n';
    out += "rank,index,incoherence\n";
    for (std::size_t r = 0; r < p.top_indices.size(); ++r) {
      out += std::to_string(r + 1) + ',' + std::to_string(p.top_indices[r]) + ',' +
             fmt(p.per_index_incoherence[p.top_indices[r]]) + '\n';
    }
    emit(c, out);
  } else {
    json body = coherence_to_json(p);
    body["ids"] = b.ids;
    emit(c, envelope("coherence", c, std::move(body)).dump(2) + "\n");
  }
  return 0;
}

int run_tvcheck(const Common& c) {
  const Batch b = load_batch(c);
  if (b.embeddings.size() < 2) throw Error(ErrorCode::invalid_argument, "tvcheck needs at least two signals");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<TvConsistency> results;
  bool all_ok = true;
  for (std::size_t i = 0; i < b.embeddings.size(); ++i) {
    for (std::size_t j = i + 1; j < b.embeddings.size(); ++j) {
      results.push_back(tv_consistency(b.embeddings[i], b.embeddings[j]));
      pairs.emplace_back(i, j);
      all_ok = all_ok && results.back().consistent;
    }
  }
  if (c.format == "csv") {
    std::string out = "a,b,mass_a,mass_b,tv,delta,j_direct,j_via_tv,d_direct,d_via_tv,residual,consistent\n";
    for (std::size_t p = 0; p < results.size(); ++p) {
      const auto& r = results[p];
      out += b.ids[pairs[p].first] + ',' + b.ids[pairs[p].second] + ',' + fmt(r.mass_a) + ',' + fmt(r.mass_b) + ',' +
             fmt(r.tv) + ',' + fmt(r.delta) + ',' + fmt(r.j_direct) + ',' + fmt(r.j_via_tv) + ',' +
             fmt(r.d_direct) + ',' + fmt(r.d_via_tv) + ',' + fmt(r.residual) + ',' +
             (r.consistent ? "true" : "false") + '\n';
    }
    emit(c, out);
  } else {
    json list = json::array();
    for (std::size_t p = 0; p < results.size(); ++p) {
      json entry = tv_to_json(results[p]);
      entry["a"] = b.ids[pairs[p].first];
      entry["b"] = b.ids[pairs[p].second];
      list.push_back(std::move(entry));
    }
    emit(c, envelope("tvcheck", c, {{"pairs", std::move(list)}, {"consistent", all_ok}}).dump(2) + "\n");
  }
  if (!all_ok) throw Error(ErrorCode::invariant_violation, "TV route and direct route disagree beyond tolerance");
  return 0;
}

int run_casestudy(const Common& c, const Flags& f) {
  const PhaseShiftPair pair = phase_shift_pair(f.samples, f.period, f.shift);
  const CaseStudySummary s = summarize(pair);
  const OverlapEnvelope env = overlap_envelope(pair.a, pair.b);
  if (c.format == "json") {
    json samples = json::array();
    for (std::size_t i = 0; i < pair.t.size(); ++i) {
      samples.push_back({{"t", pair.t[i]}, {"a", pair.a[i]}, {"b", pair.b[i]},
                         {"intersection", env.intersection[i]}, {"union", env.union_mass[i]}});
    }
    json body = {{"period", f.period}, {"shift", f.shift},       {"samples", f.samples},
                 {"j_peak", s.similarity}, {"d_peak", s.distance}, {"pearson", s.pearson},
                 {"cos_phase", s.cos_phase}, {"envelope", std::move(samples)}};
    emit(c, envelope("casestudy", c, std::move(body)).dump(2) + "\n");
  } else {
    std::string out = "# j_peak=" + fmt(s.similarity) + " d_peak=" + fmt(s.distance) + " pearson=" + fmt(s.pearson) +
                      " cos_phase=" + fmt(s.cos_phase) + '\n';
    out += "t,a,b,intersection,union\n";
    for (std::size_t i = 0; i < pair.t.size(); ++i) {
      out += fmt(pair.t[i]) + ',' + fmt(pair.a[i]) + ',' + fmt(pair.b[i]) + ',' + fmt(env.intersection[i]) + ',' +
             fmt(env.union_mass[i]) + '\n';
    }
    emit(c, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign-aware peak-to-peak similarity, kernels and coalition budgets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  Flags flags;

  auto* embed = app.add_subcommand("embed", "write mass embeddings");
  add_common(embed, common);
  auto* dist = app.add_subcommand("dist", "pairwise distance matrix");
  add_common(dist, common);
  auto* gram_cmd = app.add_subcommand("gram", "J_peak Gram matrix with PSD check");
  add_common(gram_cmd, common);
  auto* kernel = app.add_subcommand("kernel", "radial kernel exp(-lambda d) with PSD check");
  add_common(kernel, common);
  kernel->add_option("--lambda", flags.lambda, "kernel bandwidth")->check(CLI::PositiveNumber);
  auto* budgets = app.add_subcommand("budgets", "coalition budgets by Moebius inversion");
  add_common(budgets, common);
  budgets->add_option("--max-coalition", flags.max_coalition, "largest m accepted without --force");
  budgets->add_flag("--force", flags.force, "allow up to 30 signals");
  budgets->add_option("--groups", flags.groups, "state grouping JSON")->check(CLI::ExistingFile);
  auto* coh = app.add_subcommand("coherence", "grand-coalition coherence profile");
  add_common(coh, common);
  coh->add_option("--top-k", flags.top_k, "number of ranked coordinates");
  auto* tv = app.add_subcommand("tvcheck", "compare direct and total-variation routes");
  add_common(tv, common);
  auto* cs = app.add_subcommand("casestudy", "phase-shifted sinusoid overlap envelopes");
  add_common(cs, common, false);
  cs->add_option("--shift", flags.shift, "time shift between the two sinusoids");
  cs->add_option("--period", flags.period, "period T")->check(CLI::PositiveNumber);
  cs->add_option("--samples", flags.samples, "samples over one period");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (*embed) return run_embed(common);
    if (*dist) return run_dist(common);
    if (*gram_cmd) return run_gram(common, "gram", {KernelKind::peak, 1.0});
    if (*kernel) return run_gram(common, "kernel", {KernelKind::radial, flags.lambda});
    if (*budgets) return run_budgets(common, flags);
    if (*coh) return run_coherence(common, flags);
    if (*tv) return run_tvcheck(common);
    if (*cs) return run_casestudy(common, flags);
  } catch (const Error& e) {
    std::cerr << "error code=" << to_string(e.code()) << " reason=" << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error code=internal reason=" << e.what() << '\n';
    return 1;
  }
  return 2;
}
