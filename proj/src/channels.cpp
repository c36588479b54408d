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

#include "ionsynth/channels.hpp"

#include <cmath>

namespace ionsynth {

namespace {

using enum ChannelKind;

// H3/H4 are H1/H2 shifted a->b, b->c; H6/H7 shift H4/H3 by b->c, c->d;
// H5 exchanges x/y instead of y/z and H8 is its b<->c copy.
constexpr std::array<ChannelSpec, 9> kSpecs{{
    {ChannelId::H1, exchange, Mode::y, Mode::z, Level::a, Level::b},
    {ChannelId::H2, carrier, Mode::x, Mode::x, Level::a, Level::b},
    {ChannelId::H3, exchange, Mode::y, Mode::z, Level::b, Level::c},
    {ChannelId::H4, carrier, Mode::x, Mode::x, Level::b, Level::c},
    {ChannelId::H5, exchange, Mode::x, Mode::y, Level::a, Level::b},
    {ChannelId::H6, carrier, Mode::x, Mode::x, Level::c, Level::d},
    {ChannelId::H7, exchange, Mode::y, Mode::z, Level::c, Level::d},
    {ChannelId::H8, exchange, Mode::x, Mode::y, Level::b, Level::c},
    {ChannelId::H9, red_sideband, Mode::x, Mode::x, Level::a, Level::b},
}};

constexpr std::array<std::string_view, 9> kNames{"H1", "H2", "H3", "H4", "H5",
                                                 "H6", "H7", "H8", "H9"};

int& mode_ref(Occupation& o, Mode m) {
  switch (m) {
    case Mode::x: return o.nx;
    case Mode::y: return o.ny;
    case Mode::z: return o.nz;
  }
  return o.nx;
}

int mode_of(const Occupation& o, Mode m) {
  Occupation copy = o;
  return mode_ref(copy, m);
}

double mode_eps(const LambDickeParams& ld, Mode m) {
  switch (m) {
    case Mode::x: return ld.eps_x;
    case Mode::y: return ld.eps_y;
    case Mode::z: return ld.eps_z;
  }
  return 0.0;
}

}  // namespace

void validate(const LambDickeParams& ld) {
  for (double e : {ld.eps_x, ld.eps_y, ld.eps_z, ld.eps_carrier}) {
    if (!std::isfinite(e) || e < 0.0) {
      throw DomainError("Lamb-Dicke parameters must be finite and non-negative");
    }
  }
}

std::string_view channel_name(ChannelId id) { return kNames[static_cast<int>(id) - 1]; }

std::optional<ChannelId> parse_channel(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAllChannels[i];
  }
  return std::nullopt;
}

const ChannelSpec& channel_spec(ChannelId id) { return kSpecs[static_cast<int>(id) - 1]; }

double nonlinearity(double eps, int n) {
  if (n < 0) return 0.0;
  const double x = eps * eps;
  // Three-term recurrence for the associated Laguerre polynomial L^1_n(x).
  double prev = 1.0;
  double cur = 2.0 - x;
  if (n == 0) {
    cur = 1.0;
  } else {
    for (int k = 1; k < n; ++k) {
      const double next = ((2.0 * k + 2.0 - x) * cur - (k + 1.0) * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
  }
  return std::exp(-0.5 * x) * cur / (n + 1.0);
}

std::optional<Occupation> partner_occupation(const ChannelSpec& spec, const Occupation& src) {
  Occupation dst = src;
  switch (spec.kind) {
    case carrier:
      break;
    case exchange:
      if (mode_of(src, spec.lowered) < 1) return std::nullopt;
      ++mode_ref(dst, spec.raised);
      --mode_ref(dst, spec.lowered);
      break;
    case red_sideband:
      if (mode_of(src, spec.lowered) < 1) return std::nullopt;
      --mode_ref(dst, spec.lowered);
      break;
  }
  return dst;
}

double rabi(const ChannelSpec& spec, const Occupation& src, const LambDickeParams& ld) {
  switch (spec.kind) {
    case carrier:
      return nonlinearity(ld.eps_carrier, src.nx);
    case exchange: {
      const int np = mode_of(src, spec.raised);
      const int nq = mode_of(src, spec.lowered);
      if (nq < 1) return 0.0;
      return std::sqrt((np + 1.0) * nq) * nonlinearity(mode_eps(ld, spec.raised), np) *
             nonlinearity(mode_eps(ld, spec.lowered), nq - 1);
    }
    case red_sideband: {
      const int n = mode_of(src, spec.lowered);
      if (n < 1) return 0.0;
      return std::sqrt(static_cast<double>(n)) * nonlinearity(ld.eps_carrier, n - 1);
    }
  }
  return 0.0;
}

PairDecomposition coupled_pairs(const ChannelSpec& spec, const Truncation& t,
                                const LambDickeParams& ld) {
  PairDecomposition out;
  std::vector<bool> used(t.dim(), false);
  for (const Component& c : enumerate_basis(t)) {
    if (c.level != spec.lower_level) continue;
    const auto dst_occ = partner_occupation(spec, c.occ);
    if (!dst_occ || !t.contains(*dst_occ)) continue;
    const double omega = rabi(spec, c.occ, ld);
    if (omega == 0.0) continue;
    const Component dst{*dst_occ, spec.upper_level};
    used[index_of(c, t)] = true;
    used[index_of(dst, t)] = true;
    out.pairs.push_back({c, dst, omega});
  }
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (!used[k]) out.untouched.push_back(component_of(k, t));
  }
  return out;
}

Eigen::MatrixXcd dense_hamiltonian(const ChannelSpec& spec, double theta, const Truncation& t,
                                   const LambDickeParams& ld) {
  const auto dim = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const cplx down = std::polar(1.0, -theta);
  for (const CoupledPair& p : coupled_pairs(spec, t, ld).pairs) {
    const auto src = static_cast<Eigen::Index>(index_of(p.src, t));
    const auto dst = static_cast<Eigen::Index>(index_of(p.dst, t));
    h(dst, src) = p.omega * down;
    h(src, dst) = p.omega * std::conj(down);
  }
  return h;
}

}  // namespace ionsynth
