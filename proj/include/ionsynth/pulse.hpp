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

// Elementary pulses exp(-i x H_p(theta)) and ordered programs of them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ionsynth/channels.hpp"
#include "ionsynth/fock.hpp"
#include "ionsynth/kernels.hpp"

namespace ionsynth {

inline constexpr double kPi = 3.14159265358979323846;

/// Maps an angle to (-pi, pi]. Identity on angles already in range.
double wrap_phase(double theta);

struct Pulse {
  ChannelId channel = ChannelId::H1;
  /// Interaction length |g| tau, dimensionless, >= 0.
  double x = 0.0;
  /// Laser phase in (-pi, pi].
  double theta = 0.0;
  /// Source component the pulse was solved for. Audit only.
  Component note;

  bool operator==(const Pulse&) const = default;
};

enum class Direction : std::uint8_t { deevolution, preparation };

std::string to_string(Direction d);
Direction parse_direction(const std::string& s);

/// Describes the target a schedule was compiled for, so schedule files are
/// self-describing.
struct TargetTag {
  std::string kind;  // ghz | corr | diag | file | custom
  double alpha = 0.0;
  std::string path;
  double truncated_mass = 0.0;

  bool operator==(const TargetTag&) const = default;
};

struct Schedule {
  std::vector<Pulse> pulses;
  LambDickeParams lamb_dicke;
  Truncation truncation;
  Direction direction = Direction::deevolution;
  TargetTag target;

  bool operator==(const Schedule&) const = default;
};

struct PulseParams {
  double x = 0.0;
  double theta = 0.0;
};

/// Pair rotation parameters that move all of q_lower into the upper member.
/// Throws DomainError for omega <= 0.
PulseParams solve_kill_lower(cplx q_lower, cplx q_upper, double omega);
/// Pair rotation parameters that move all of q_upper into the lower member.
PulseParams solve_kill_upper(cplx q_lower, cplx q_upper, double omega);

/// Channel pair tables for one (truncation, Lamb-Dicke) setting. Building
/// one is O(9 * dim); reuse it across pulses and trials.
class Engine {
 public:
  Engine(Truncation t, LambDickeParams ld);

  const Truncation& truncation() const { return trunc_; }
  const LambDickeParams& lamb_dicke() const { return ld_; }

  kernels::PairView pairs(ChannelId id) const;

  struct PairRef {
    std::size_t lower;
    std::size_t upper;
    double omega;
  };
  /// The pair of channel `id` containing basis index k, if any.
  std::optional<PairRef> pair_containing(ChannelId id, std::size_t k) const;

  void apply(StateVector& s, const Pulse& p) const;
  void apply(StateVector& s, const Schedule& sch) const;

 private:
  struct Table {
    std::vector<std::uint32_t> lower;
    std::vector<std::uint32_t> upper;
    std::vector<double> omega;
    std::vector<std::int32_t> slot;  // basis index -> pair slot, -1 if untouched
  };

  void check(const StateVector& s) const;

  Truncation trunc_;
  LambDickeParams ld_;
  std::array<Table, 9> tables_;
};

StateVector apply_pulse(const StateVector& s, const Pulse& p, const Engine& engine);
StateVector apply_schedule(const StateVector& s, const Schedule& sch);
StateVector apply_schedule(const StateVector& s, const Schedule& sch, const Engine& engine);

/// Reverses the order and shifts every phase by pi.
Schedule dagger_schedule(const Schedule& sch);

/// Dense reference: exp(-i x H(theta)) s via a Hermitian eigendecomposition.
/// Intended for small truncations only.
StateVector oracle_apply(const StateVector& s, const Pulse& p, const LambDickeParams& ld);
Eigen::MatrixXcd oracle_unitary(const Pulse& p, const Truncation& t, const LambDickeParams& ld);

}  // namespace ionsynth
