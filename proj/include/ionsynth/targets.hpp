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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ionsynth/fock.hpp"
#include "ionsynth/pulse.hpp"

namespace ionsynth {

inline constexpr int kDefaultJmax = 12;
inline constexpr double kDefaultAlpha = 1.0;

/// A vibrational target on level a together with how much of the
/// untruncated state survived the cutoff.
struct TargetState {
  StateVector state;
  /// Squared norm of the exact state inside the truncation, before
  /// renormalization. 1 when nothing was cut.
  double kept_mass = 1.0;
};

/// e^{-|alpha|^2/2} sum_n alpha^n / sqrt(n!) |n,n,n>, cut at 3n <= jmax.
TargetState target_corr(cplx alpha, Truncation t);
/// (1/sqrt 5) sum_{n=0}^{4} |n,n,n>. Needs jmax >= 12.
TargetState target_diag(Truncation t);
/// N (|alpha,alpha,alpha> + |-alpha,-alpha,-alpha>), cut at J <= jmax.
TargetState target_ghz(cplx alpha, Truncation t);

struct TargetSpec {
  enum class Kind { ghz, corr, diag, file };
  Kind kind = Kind::diag;
  double alpha = kDefaultAlpha;
  std::string path;
  std::optional<int> jmax;
};

/// Parses "ghz", "corr", "diag" or "file:<path>".
TargetSpec parse_target_spec(std::string_view text);
std::string kind_name(TargetSpec::Kind kind);

struct BuiltTarget {
  StateVector state;
  TargetTag tag;
};

/// Builds a target. Built-ins default to jmax = 12; file targets default to
/// their largest total quanta.
BuiltTarget make_target(const TargetSpec& spec);

/// Rebuilds the target recorded in a schedule file, on the given truncation.
BuiltTarget target_from_tag(const TargetTag& tag, Truncation t);

struct BuiltinInfo {
  std::string name;
  std::string description;
};
std::vector<BuiltinInfo> builtin_targets();

}  // namespace ionsynth
