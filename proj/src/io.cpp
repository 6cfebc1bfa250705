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

#include "peakjac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <system_error>

#include "peakjac/error.hpp"
#include "peakjac/format.hpp"

namespace peakjac {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& what) {
  throw Error(ErrorCode::parse_error, source + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_batch(SignalSet& set) {
  if (set.size() == 0) throw Error(ErrorCode::parse_error, set.source + ": no signals");
  std::set<std::string> seen;
  for (const auto& id : set.ids()) {
    if (!seen.insert(id).second) parse_fail(set.source, "duplicate signal id '" + id + "'");
  }
}

double json_bound(const json& v, const std::string& where, bool angular) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (angular && s == "pi") return std::numbers::pi;
    if (angular && s == "-pi") return -std::numbers::pi;
    if (angular && s == "pi/2") return std::numbers::pi / 2;
    if (angular && s == "-pi/2") return -std::numbers::pi / 2;
    double out = 0.0;
    if (parse_double(s, out)) return out;
    throw Error(ErrorCode::invalid_partition, where + ": unrecognised bound '" + s + "'");
  }
  if (v.is_number()) return v.get<double>();
  throw Error(ErrorCode::invalid_partition, where + " must be a number or \"inf\"/\"-inf\"");
}

json bound_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::invalid_partition, where + " is missing \"" + key + "\"");
  }
  return obj.at(key);
}

bool flag_or(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw Error(ErrorCode::invalid_partition, std::string(key) + " must be a boolean");
  return obj.at(key).get<bool>();
}

json table_to_json(const CoalitionTable& cumulative, const CoalitionTable& exclusive) {
  json out = json::object();
  for (const auto& [id, value] : cumulative.entries()) {
    json row = {{"order", id.order()}, {"cumulative", value}};
    if (exclusive.contains(id)) row["exclusive"] = exclusive.at(id);
    out[id.label()] = std::move(row);
  }
  return out;
}

json doubles(std::span<const double> values) {
  json out = json::array();
  for (double v : values) out.push_back(v);
  return out;
}

}  // namespace

std::size_t SignalSet::length() const noexcept {
  if (is_complex) return complex.empty() ? 0 : complex.front().size();
  return real.empty() ? 0 : real.front().size();
}

std::vector<std::string> SignalSet::ids() const {
  std::vector<std::string> out;
  if (is_complex) {
    for (const auto& z : complex) out.push_back(z.id());
  } else {
    for (const auto& x : real) out.push_back(x.id());
  }
  return out;
}

SignalSet parse_signals_csv(std::string_view text, bool complex_mode, std::string source) {
  SignalSet set;
  set.is_complex = complex_mode;
  set.source = std::move(source);
  std::size_t expected = 0;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_commas(line);
    const std::string where = "row " + std::to_string(line_no);
    if (fields.front().empty()) parse_fail(set.source, where + " column 1: empty id");
    const std::size_t count = fields.size() - 1;
    if (count == 0) parse_fail(set.source, where + ": signal has no values");
    if (complex_mode && count % 2 != 0) {
      parse_fail(set.source, where + ": complex row needs re,im pairs but has " + std::to_string(count) + " values");
    }
    if (expected == 0) {
      expected = count;
    } else if (count != expected) {
      parse_fail(set.source, where + ": ragged row with " + std::to_string(count) + " values, expected " +
                                 std::to_string(expected));
    }
    std::vector<double> values(count);
    for (std::size_t c = 0; c < count; ++c) {
      const std::string col = where + " column " + std::to_string(c + 2);
      if (!parse_double(fields[c + 1], values[c])) {
        parse_fail(set.source, col + ": cannot parse '" + std::string(fields[c + 1]) + "'");
      }
      if (!std::isfinite(values[c])) {
        throw Error(ErrorCode::invalid_signal, set.source + ": " + col + ": non-finite value");
      }
    }
    std::string id(fields.front());
    if (complex_mode) {
      std::vector<std::complex<double>> z(count / 2);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = {values[2 * i], values[2 * i + 1]};
      set.complex.emplace_back(std::move(z), std::move(id));
    } else {
      set.real.emplace_back(std::move(values), std::move(id));
    }
    if (end == text.size()) break;
  }
  check_batch(set);
  return set;
}

SignalSet parse_signals_json(std::string_view text, bool complex_mode, std::string source) {
  SignalSet set;
  set.is_complex = complex_mode;
  set.source = std::move(source);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(set.source, e.what());
  }
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("signals")) parse_fail(set.source, "expected a \"signals\" array");
    list = &doc.at("signals");
  }
  if (!list->is_array()) parse_fail(set.source, "\"signals\" must be an array");
  std::size_t expected = 0;
  for (std::size_t r = 0; r < list->size(); ++r) {
    const json& entry = (*list)[r];
    const std::string where = "signal " + std::to_string(r + 1);
    if (!entry.is_object() || !entry.contains("values") || !entry.at("values").is_array()) {
      parse_fail(set.source, where + ": expected {\"id\": ..., \"values\": [...]}");
    }
    std::string id = entry.contains("id") && entry.at("id").is_string() ? entry.at("id").get<std::string>()
                                                                        : std::to_string(r + 1);
    const json& values = entry.at("values");
    if (values.empty()) parse_fail(set.source, where + ": signal has no values");
    if (expected == 0) {
      expected = values.size();
    } else if (values.size() != expected) {
      parse_fail(set.source, where + ": ragged signal with " + std::to_string(values.size()) +
                                 " values, expected " + std::to_string(expected));
    }
    auto number = [&](const json& v, std::size_t c) {
      const std::string col = where + " column " + std::to_string(c + 1);
      if (!v.is_number()) parse_fail(set.source, col + ": not a number");
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw Error(ErrorCode::invalid_signal, set.source + ": " + col + ": non-finite value");
      return x;
    };
    if (complex_mode) {
      std::vector<std::complex<double>> z;
      for (std::size_t c = 0; c < values.size(); ++c) {
        const json& pair = values[c];
        if (!pair.is_array() || pair.size() != 2) {
          parse_fail(set.source, where + " column " + std::to_string(c + 1) + ": expected [re, im]");
        }
        z.emplace_back(number(pair[0], c), number(pair[1], c));
      }
      set.complex.emplace_back(std::move(z), std::move(id));
    } else {
      std::vector<double> x;
      for (std::size_t c = 0; c < values.size(); ++c) x.push_back(number(values[c], c));
      set.real.emplace_back(std::move(x), std::move(id));
    }
  }
  check_batch(set);
  return set;
}

SignalSet load_signals(const std::filesystem::path& path, InputFormat format, bool complex_mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return format == InputFormat::json ? parse_signals_json(text, complex_mode, path.string())
                                     : parse_signals_csv(text, complex_mode, path.string());
}

std::string signals_to_csv(const SignalSet& set) {
  std::string out;
  auto emit_row = [&](const std::string& id, auto&& values) {
    out += id;
    for (double v : values) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  };
  if (set.is_complex) {
    for (const auto& z : set.complex) {
      std::vector<double> flat;
      for (const auto& c : z.values()) {
        flat.push_back(c.real());
        flat.push_back(c.imag());
      }
      emit_row(z.id(), flat);
    }
  } else {
    for (const auto& x : set.real) emit_row(x.id(), x.values());
  }
  return out;
}

StatePartition partition_from_json(const json& j) {
  const json& states = require_field(j, "states", "partition");
  if (!states.is_array()) throw Error(ErrorCode::invalid_partition, "\"states\" must be an array");
  std::vector<IntervalState> out;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const json& s = states[k];
    const std::string where = "state " + std::to_string(k);
    IntervalState st;
    st.name = s.contains("name") && s.at("name").is_string() ? s.at("name").get<std::string>() : "s" + std::to_string(k);
    st.lower = json_bound(require_field(s, "lower", where), where + ".lower", false);
    st.upper = json_bound(require_field(s, "upper", where), where + ".upper", false);
    st.lower_inclusive = flag_or(s, "lower_inclusive", false);
    st.upper_inclusive = flag_or(s, "upper_inclusive", false);
    out.push_back(std::move(st));
  }
  std::optional<std::size_t> neutral;
  if (j.contains("neutral") && !j.at("neutral").is_null()) {
    if (!j.at("neutral").is_number_unsigned()) {
      throw Error(ErrorCode::invalid_partition, "\"neutral\" must be a nonnegative state index");
    }
    neutral = j.at("neutral").get<std::size_t>();
  }
  return StatePartition(std::move(out), neutral);
}

json partition_to_json(const StatePartition& p) {
  json states = json::array();
  for (const auto& s : p.states()) {
    states.push_back({{"name", s.name},
                      {"lower", bound_to_json(s.lower)},
                      {"upper", bound_to_json(s.upper)},
                      {"lower_inclusive", s.lower_inclusive},
                      {"upper_inclusive", s.upper_inclusive}});
  }
  json out = {{"states", std::move(states)}};
  if (p.neutral_index()) out["neutral"] = *p.neutral_index();
  return out;
}

AngularPartition angular_partition_from_json(const json& j) {
  const json& sectors = require_field(j, "sectors", "angular partition");
  if (!sectors.is_array()) throw Error(ErrorCode::invalid_partition, "\"sectors\" must be an array");
  std::vector<AngularSector> out;
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const json& s = sectors[k];
    const std::string where = "sector " + std::to_string(k);
    AngularSector sec;
    sec.name = s.contains("name") && s.at("name").is_string() ? s.at("name").get<std::string>()
                                                              : "theta" + std::to_string(k + 1);
    sec.lower = json_bound(require_field(s, "lower", where), where + ".lower", true);
    sec.upper = json_bound(require_field(s, "upper", where), where + ".upper", true);
    sec.lower_inclusive = flag_or(s, "lower_inclusive", false);
    sec.upper_inclusive = flag_or(s, "upper_inclusive", true);
    out.push_back(std::move(sec));
  }
  return AngularPartition(std::move(out));
}

CoarseningMap grouping_from_json(const json& j, std::size_t fine_count) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::string> names;
  auto read_members = [&](const json& members, const std::string& name) {
    if (!members.is_array()) throw Error(ErrorCode::invalid_grouping, "group '" + name + "' must list state indices");
    std::vector<std::size_t> g;
    for (const auto& v : members) {
      if (!v.is_number_unsigned()) {
        throw Error(ErrorCode::invalid_grouping, "group '" + name + "' has a non-index member");
      }
      g.push_back(v.get<std::size_t>());
    }
    groups.push_back(std::move(g));
    names.push_back(name);
  };
  if (j.is_array()) {
    for (std::size_t g = 0; g < j.size(); ++g) {
      const json& entry = j[g];
      if (!entry.is_object() || !entry.contains("states")) {
        throw Error(ErrorCode::invalid_grouping, "group " + std::to_string(g) + " needs a \"states\" list");
      }
      const std::string name = entry.contains("name") && entry.at("name").is_string()
                                   ? entry.at("name").get<std::string>()
                                   : "g" + std::to_string(g);
      read_members(entry.at("states"), name);
    }
  } else if (j.is_object()) {
    const json& body = j.contains("groups") ? j.at("groups") : j;
    if (&body != &j) return grouping_from_json(body, fine_count);
    for (const auto& [name, members] : j.items()) read_members(members, name);
  } else {
    throw Error(ErrorCode::invalid_grouping, "grouping must be a JSON array or object");
  }
  return CoarseningMap(fine_count, std::move(groups), std::move(names));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
}

json embedding_to_json(const MassEmbedding& e, const std::string& id) {
  json entries = json::array();
  for (const Atom& a : e.atoms()) entries.push_back(json::array({a.row, a.state, a.mass}));
  json out;
  if (!id.empty()) out["id"] = id;
  out["n"] = e.rows();
  out["K"] = e.states();
  out["kind"] = std::string(to_string(e.kind()));
  out["partition_id"] = e.partition_id();
  out["entries"] = std::move(entries);
  return out;
}

json report_to_json(const CoalitionReport& report) {
  json out;
  out["m"] = report.m;
  out["signal_ids"] = report.signal_ids;
  out["norms"] = doubles(report.norms);
  out["coalitions"] = table_to_json(report.cumulative, report.exclusive);
  out["closure_residuals"] = doubles(report.closure_residuals);
  out["min_exclusive"] = report.min_exclusive;
  out["closure_ok"] = report.closure_ok;
  out["nonnegative_ok"] = report.nonnegative_ok;
  if (!report.groups.empty()) {
    json groups = json::array();
    for (const auto& g : report.groups) {
      groups.push_back({{"name", g.name}, {"coalitions", table_to_json(g.cumulative, g.exclusive)}});
    }
    out["groups"] = std::move(groups);
  }
  return out;
}

std::string report_to_csv(const CoalitionReport& report) {
  std::string out = "coalition,order,cumulative,exclusive";
  for (const auto& g : report.groups) out += "," + g.name + "_cumulative," + g.name + "_exclusive";
  out += '\n';
  for (const auto& [id, value] : report.cumulative.entries()) {
    out += '"' + id.label() + "\"," + std::to_string(id.order()) + ',' + format_double(value) + ',' +
           format_double(report.exclusive.at(id));
    for (const auto& g : report.groups) {
      out += ',' + format_double(g.cumulative.at(id)) + ',' + format_double(g.exclusive.at(id));
    }
    out += '\n';
  }
  return out;
}

std::string report_to_text(const CoalitionReport& report) {
  auto shown = [](double v) { return std::abs(v) < kDisplayZero ? std::string("0") : format_double(v); };
  std::ostringstream os;
  os << "signals:";
  for (std::size_t j = 0; j < report.m; ++j) {
    os << ' ' << (j + 1) << '=' << report.signal_ids[j] << " (|A|=" << format_double(report.norms[j]) << ')';
  }
  os << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-24s %5s %22s %22s\n", "coalition", "order", "cumulative", "exclusive");
  os << line;
  for (const auto& [id, value] : report.cumulative.entries()) {
    std::snprintf(line, sizeof line, "%-24s %5zu %22s %22s\n", ("{" + id.label() + "}").c_str(), id.order(),
                  shown(value).c_str(), shown(report.exclusive.at(id)).c_str());
    os << line;
  }
  os << "\nclosure residuals:";
  for (double r : report.closure_residuals) os << ' ' << shown(r);
  os << "\nclosure " << (report.closure_ok ? "ok" : "FAILED") << ", nonnegativity "
     << (report.nonnegative_ok ? "ok" : "FAILED") << '\n';
  return os.str();
}

json coherence_to_json(const CoherenceProfile& profile) {
  json top = json::array();
  for (std::size_t i : profile.top_indices) {
    top.push_back({{"index", i}, {"incoherence", profile.per_index_incoherence[i]}});
  }
  return {{"grand_intersection", profile.grand_intersection},
          {"grand_union", profile.grand_union},
          {"grand_similarity", profile.grand_similarity},
          {"grand_distance", profile.grand_distance},
          {"per_index_incoherence", doubles(profile.per_index_incoherence)},
          {"top", std::move(top)}};
}

json tv_to_json(const TvConsistency& r) {
  return {{"mass_a", r.mass_a},       {"mass_b", r.mass_b},     {"tv", r.tv},
          {"delta", r.delta},         {"j_direct", r.j_direct}, {"j_via_tv", r.j_via_tv},
          {"d_direct", r.d_direct},   {"d_via_tv", r.d_via_tv}, {"residual", r.residual},
          {"vacuum", r.vacuum},       {"consistent", r.consistent}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(fnv1a64(path.string()) & 0xffff);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot rename into " + path.string());
  }
}

}  // namespace peakjac
