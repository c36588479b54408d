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

#pragma once

// File formats.
//
// Schedule (JSON, UTF-8):
//   {"version": 1,
//    "lamb_dicke": {"ex": .., "ey": .., "ez": .., "exc": ..},
//    "jmax": 12, "direction": "preparation",
//    "target": {"kind": "diag", "alpha": .., "path": "", "truncated_mass": ..},
//    "pulses": [{"i": 0, "channel": "H1", "x": .., "theta": ..,
//                "note": [nx, ny, nz, "a"]}, ...]}
// Reals are written with 17 significant digits so load(save(s)) == s.
//
// Target (JSON): [{"n": [nx, ny, nz], "re": .., "im": ..}, ...], unit norm
// within 1e-6.
//
// Sweep report (CSV):
//   delta,delta_theta,trials,fid_mean,fid_std,fid_post_mean,efficiency_mean

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ionsynth/noise.hpp"
#include "ionsynth/pulse.hpp"
#include "ionsynth/synthesis.hpp"
#include "ionsynth/targets.hpp"

namespace ionsynth {

/// Malformed input file; the message names the line or field at fault.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Locale-independent shortest round-trip decimal.
std::string format_real(double v);
/// Locale-independent decimal with 17 significant digits.
std::string format_real17(double v);

std::string schedule_to_json(const Schedule& sch);
Schedule schedule_from_json(std::string_view text);

void save_schedule(const Schedule& sch, const std::filesystem::path& path);
/// Writes the preparation program to `path` and, if given, the de-evolution
/// program to `deevolution_path`.
void save_schedule(const CompileResult& res, const std::filesystem::path& path,
                   const std::optional<std::filesystem::path>& deevolution_path = std::nullopt);
Schedule load_schedule(const std::filesystem::path& path);

/// Parses a target file. With no jmax the truncation is the smallest that
/// holds the listed components.
TargetState target_from_json(std::string_view text, std::optional<int> jmax = std::nullopt);
TargetState load_target(const std::filesystem::path& path, std::optional<int> jmax = std::nullopt);
std::string target_to_json(const StateVector& target);

inline constexpr std::string_view kReportHeader =
    "delta,delta_theta,trials,fid_mean,fid_std,fid_post_mean,efficiency_mean";

std::string report_to_csv(const SweepReport& report);
void save_report(const SweepReport& report, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ionsynth
