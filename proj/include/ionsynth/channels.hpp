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

// The nine effective Raman interaction channels.
//
// Each channel couples a lower electronic level to an upper one and, in the
// rotating frame, is a direct sum of 2x2 blocks over pairs of basis
// components. The coupling of one pair is Omega * |g|, where Omega is the
// generalized Rabi frequency including the Lamb-Dicke nonlinearity.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ionsynth/fock.hpp"

namespace ionsynth {

struct LambDickeParams {
  double eps_x = 0.3;
  double eps_y = 0.1;
  double eps_z = 0.2;
  /// Effective parameter of the counter-propagating x beams (carrier and
  /// red sideband channels).
  double eps_carrier = 0.1;

  bool operator==(const LambDickeParams&) const = default;
};

/// Throws DomainError if any parameter is negative or not finite.
void validate(const LambDickeParams& ld);

enum class ChannelId : std::uint8_t { H1 = 1, H2, H3, H4, H5, H6, H7, H8, H9 };

inline constexpr std::array<ChannelId, 9> kAllChannels{
    ChannelId::H1, ChannelId::H2, ChannelId::H3, ChannelId::H4, ChannelId::H5,
    ChannelId::H6, ChannelId::H7, ChannelId::H8, ChannelId::H9};

std::string_view channel_name(ChannelId id);
std::optional<ChannelId> parse_channel(std::string_view name);

enum class Mode : std::uint8_t { x, y, z };

enum class ChannelKind : std::uint8_t {
  /// Raises one mode and lowers another; preserves J.
  exchange,
  /// Leaves occupations unchanged.
  carrier,
  /// Lowers one mode by one quantum.
  red_sideband,
};

struct ChannelSpec {
  ChannelId id;
  ChannelKind kind;
  Mode raised = Mode::x;  // exchange only
  Mode lowered = Mode::x;  // exchange and red sideband
  Level lower_level;
  Level upper_level;
};

const ChannelSpec& channel_spec(ChannelId id);

/// <n| F_eps |n> = exp(-eps^2/2) L^1_n(eps^2) / (n+1).
double nonlinearity(double eps, int n);

/// Generalized Rabi frequency of the pair whose lower-level member has
/// occupation src. Zero when the transition does not exist. The value is a
/// signed matrix element: for large eps the Laguerre factor can go negative.
double rabi(const ChannelSpec& spec, const Occupation& src, const LambDickeParams& ld);

/// Occupation reached from src by the channel, if it exists.
std::optional<Occupation> partner_occupation(const ChannelSpec& spec, const Occupation& src);

struct CoupledPair {
  Component src;  // lower level
  Component dst;  // upper level
  double omega;
};

struct PairDecomposition {
  std::vector<CoupledPair> pairs;
  std::vector<Component> untouched;
};

/// Splits the truncated basis into the channel's 2x2 blocks and the
/// components it leaves alone. Pairs with zero coupling count as untouched.
PairDecomposition coupled_pairs(const ChannelSpec& spec, const Truncation& t,
                                const LambDickeParams& ld);

/// Dense Hermitian matrix of the channel with unit |g| and phase theta:
/// <dst|H|src> = omega e^{-i theta}, <src|H|dst> = omega e^{+i theta}.
Eigen::MatrixXcd dense_hamiltonian(const ChannelSpec& spec, double theta, const Truncation& t,
                                   const LambDickeParams& ld);

}  // namespace ionsynth
