// Copyright 2026 The ionsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsynth/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace ionsynth {

namespace {

using nlohmann::json;

std::string ensure_decimal(std::string s) {
  if (s.find_first_of(".eEni") == std::string::npos) s += ".0";
  return s;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what + ": malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double real_field(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

int int_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string string_field(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

Occupation occupation_field(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() < 3) fail(where, "expected [nx, ny, nz]");
  Occupation o{int_field(v[0], where + "[0]"), int_field(v[1], where + "[1]"),
               int_field(v[2], where + "[2]")};
  if (o.nx < 0 || o.ny < 0 || o.nz < 0) fail(where, "occupations must be non-negative");
  return o;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return ensure_decimal(std::string(buf, res.ptr));
}

std::string format_real17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ensure_decimal(std::string(buf, res.ptr));
}

std::string schedule_to_json(const Schedule& sch) {
  std::ostringstream os;
  const LambDickeParams& ld = sch.lamb_dicke;
  os << "{\n";
  os << "  \"version\": 1,\n";
  os << "  \"lamb_dicke\": {\"ex\": " << format_real17(ld.eps_x)
     << ", \"ey\": " << format_real17(ld.eps_y) << ", \"ez\": " << format_real17(ld.eps_z)
     << ", \"exc\": " << format_real17(ld.eps_carrier) << "},\n";
  os << "  \"jmax\": " << sch.truncation.jmax() << ",\n";
  os << "  \"direction\": \"" << to_string(sch.direction) << "\",\n";
  os << "  \"target\": {\"kind\": " << json(sch.target.kind).dump()
     << ", \"alpha\": " << format_real17(sch.target.alpha)
     << ", \"path\": " << json(sch.target.path).dump()
     << ", \"truncated_mass\": " << format_real17(sch.target.truncated_mass) << "},\n";
  os << "  \"pulses\": [";
  for (std::size_t i = 0; i < sch.pulses.size(); ++i) {
    const Pulse& p = sch.pulses[i];
    os << (i == 0 ? "\n" : ",\n");
    os << "    {\"i\": " << i << ", \"channel\": \"" << channel_name(p.channel)
       << "\", \"x\": " << format_real17(p.x) << ", \"theta\": " << format_real17(p.theta)
       << ", \"note\": [" << p.note.occ.nx << ", " << p.note.occ.ny << ", " << p.note.occ.nz
       << ", \"" << level_char(p.note.level) << "\"]}";
  }
  os << (sch.pulses.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

Schedule schedule_from_json(std::string_view text) {
  const json doc = parse_json(text, "schedule");
  Schedule sch;
  if (int_field(member(doc, "version", "schedule"), "version") != 1) {
    fail("version", "unsupported schedule version");
  }
  const json& ld = member(doc, "lamb_dicke", "schedule");
  sch.lamb_dicke = {real_field(member(ld, "ex", "lamb_dicke"), "lamb_dicke.ex"),
                    real_field(member(ld, "ey", "lamb_dicke"), "lamb_dicke.ey"),
                    real_field(member(ld, "ez", "lamb_dicke"), "lamb_dicke.ez"),
                    real_field(member(ld, "exc", "lamb_dicke"), "lamb_dicke.exc")};
  try {
    validate(sch.lamb_dicke);
  } catch (const DomainError& e) {
    fail("lamb_dicke", e.what());
  }
  const int jmax = int_field(member(doc, "jmax", "schedule"), "jmax");
  if (jmax < 0) fail("jmax", "must be non-negative");
  sch.truncation = Truncation(jmax);
  try {
    sch.direction = parse_direction(string_field(member(doc, "direction", "schedule"), "direction"));
  } catch (const DomainError& e) {
    fail("direction", e.what());
  }
  if (doc.contains("target")) {
    const json& t = doc["target"];
    sch.target.kind = string_field(member(t, "kind", "target"), "target.kind");
    sch.target.alpha = real_field(member(t, "alpha", "target"), "target.alpha");
    sch.target.path = string_field(member(t, "path", "target"), "target.path");
    sch.target.truncated_mass =
        real_field(member(t, "truncated_mass", "target"), "target.truncated_mass");
  }
  const json& pulses = member(doc, "pulses", "schedule");
  if (!pulses.is_array()) fail("pulses", "expected an array");
  sch.pulses.reserve(pulses.size());
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    const std::string where = "pulses[" + std::to_string(i) + "]";
    const json& pj = pulses[i];
    Pulse p;
    const std::string ch = string_field(member(pj, "channel", where), where + ".channel");
    const auto id = parse_channel(ch);
    if (!id) fail(where + ".channel", "unknown channel '" + ch + "'");
    p.channel = *id;
    p.x = real_field(member(pj, "x", where), where + ".x");
    if (p.x < 0.0) fail(where + ".x", "interaction length must be non-negative");
    p.theta = real_field(member(pj, "theta", where), where + ".theta");
    if (!(p.theta > -kPi && p.theta <= kPi)) fail(where + ".theta", "phase outside (-pi, pi]");
    const json& note = member(pj, "note", where);
    p.note.occ = occupation_field(note, where + ".note");
    if (note.size() != 4) fail(where + ".note", "expected [nx, ny, nz, level]");
    const std::string lvl = string_field(note[3], where + ".note[3]");
    if (lvl.size() != 1 || lvl[0] < 'a' || lvl[0] > 'd') fail(where + ".note[3]", "bad level");
    p.note.level = level_from_char(lvl[0]);
    sch.pulses.push_back(p);
  }
  return sch;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void save_schedule(const Schedule& sch, const std::filesystem::path& path) {
  write_file(path, schedule_to_json(sch));
}

void save_schedule(const CompileResult& res, const std::filesystem::path& path,
                   const std::optional<std::filesystem::path>& deevolution_path) {
  save_schedule(res.preparation, path);
  if (deevolution_path) save_schedule(res.deevolution, *deevolution_path);
}

Schedule load_schedule(const std::filesystem::path& path) {
  try {
    return schedule_from_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

TargetState target_from_json(std::string_view text, std::optional<int> jmax) {
  const json doc = parse_json(text, "target");
  if (!doc.is_array() || doc.empty()) fail("target", "expected a non-empty array of components");

  struct Entry {
    Occupation occ;
    cplx amp;
  };
  std::vector<Entry> entries;
  std::set<std::tuple<int, int, int>> seen;
  int max_total = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "target[" + std::to_string(i) + "]";
    const json& n = member(doc[i], "n", where);
    if (!n.is_array() || n.size() != 3) fail(where + ".n", "expected [nx, ny, nz]");
    const Occupation occ = occupation_field(n, where + ".n");
    const double re = real_field(member(doc[i], "re", where), where + ".re");
    const double im = doc[i].contains("im") ? real_field(doc[i]["im"], where + ".im") : 0.0;
    if (!seen.insert({occ.nx, occ.ny, occ.nz}).second) fail(where + ".n", "duplicate component");
    max_total = std::max(max_total, occ.total());
    entries.push_back({occ, {re, im}});
  }
  const Truncation t(jmax.value_or(max_total));
  if (max_total > t.jmax()) {
    throw DomainError("target has support at J=" + std::to_string(max_total) + " beyond jmax=" +
                      std::to_string(t.jmax()));
  }
  StateVector s(t);
  for (const Entry& e : entries) s.at({e.occ, Level::a}) = e.amp;
  const double n = s.norm();
  if (std::abs(n - 1.0) > 1e-6) {
    throw DomainError("target norm " + format_real(n) + " differs from 1 by more than 1e-6");
  }
  // Remove rounding left in the file so the compiler sees a unit vector.
  s.normalize();
  return {std::move(s), 1.0};
}

TargetState load_target(const std::filesystem::path& path, std::optional<int> jmax) {
  try {
    return target_from_json(read_file(path), jmax);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string target_to_json(const StateVector& target) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (std::size_t k = 0; k < target.size(); ++k) {
    if (target[k] == cplx{}) continue;
    const Component c = component_of(k, target.truncation());
    if (c.level != Level::a) throw DomainError("target files hold level-a amplitudes only");
    os << (first ? "\n" : ",\n") << "  {\"n\": [" << c.occ.nx << ", " << c.occ.ny << ", "
       << c.occ.nz << "], \"re\": " << format_real17(target[k].real())
       << ", \"im\": " << format_real17(target[k].imag()) << "}";
    first = false;
  }
  os << "\n]\n";
  return os.str();
}

std::string report_to_csv(const SweepReport& report) {
  std::string out(kReportHeader);
  out += '\n';
  for (const SweepRow& r : report.rows) {
    out += format_real(r.noise.delta) + ',' + format_real(r.noise.delta_theta) + ',' +
           std::to_string(r.stats.trials) + ',' + format_real(r.stats.fid_mean) + ',' +
           format_real(r.stats.fid_std) + ',' + format_real(r.stats.fid_post_mean) + ',' +
           format_real(r.stats.efficiency_mean) + '\n';
  }
  return out;
}

void save_report(const SweepReport& report, const std::filesystem::path& path) {
  write_file(path, report_to_csv(report));
}

}  // namespace ionsynth
