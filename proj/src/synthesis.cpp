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

#include "ionsynth/synthesis.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ionsynth {

namespace {

// Channels and levels of one ladder family. The bcd family is the abc family
// with every level raised by one: H1->H3, H2->H4, H3->H7, H4->H6, H5->H8.
struct LadderChannels {
  ChannelId a_exchange;
  ChannelId a_carrier;
  ChannelId b_exchange;
  ChannelId b_carrier;
  ChannelId c_exchange;
  Level low;
  Level mid;
  Level high;
};

constexpr LadderChannels kAbc{ChannelId::H1, ChannelId::H2, ChannelId::H3, ChannelId::H4,
                              ChannelId::H5, Level::a,      Level::b,      Level::c};
constexpr LadderChannels kBcd{ChannelId::H3, ChannelId::H4, ChannelId::H7, ChannelId::H6,
                              ChannelId::H8, Level::b,      Level::c,      Level::d};

const LadderChannels& ladder(LevelShift shift) {
  return shift == LevelShift::abc ? kAbc : kBcd;
}

// Generic exchange/carrier ladder on row (J, n_x) between levels lo < hi:
// for n_y = 0..m-1, null (n_x,n_y,m-n_y;lo) then (n_x,n_y+1,m-n_y-1;hi),
// leaving the row's population at (n_x,m,0;lo).
void sweep_row(SynthesisWorkspace& ws, int j, int nx, ChannelId exchange, ChannelId carrier,
               Level lo, Level hi) {
  const int m = j - nx;
  for (int ny = 0; ny < m; ++ny) {
    ws.kill(exchange, {{nx, ny, m - ny}, lo}, KillSide::lower);
    ws.kill(carrier, {{nx, ny + 1, m - ny - 1}, hi}, KillSide::upper);
  }
}

void check_row(const SynthesisWorkspace& ws, int j, int nx) {
  if (j < 0 || j > ws.work().truncation().jmax() || nx < 0 || nx > j) {
    throw DomainError("ladder row (J=" + std::to_string(j) + ", n_x=" + std::to_string(nx) +
                      ") outside truncation");
  }
}

void build_U(SynthesisWorkspace& ws, int j, LevelShift shift, bool sweep_row_zero) {
  if (j < 0 || j > ws.work().truncation().jmax()) {
    throw DomainError("subspace J=" + std::to_string(j) + " outside truncation");
  }
  if (sweep_row_zero) build_B(ws, j, 0, shift);
  for (int nx = 0; nx < j; ++nx) {
    build_A(ws, j, nx, shift);
    build_B(ws, j, nx + 1, shift);
    build_C(ws, j, nx, shift);
  }
  build_A(ws, j, j, shift);
}

}  // namespace

SynthesisWorkspace::SynthesisWorkspace(const Engine& engine, StateVector work,
                                       CompileOptions options)
    : engine_(engine), work_(std::move(work)), options_(std::move(options)) {
  if (!(work_.truncation() == engine_.truncation())) {
    throw DomainError("workspace state and engine truncations differ");
  }
}

void SynthesisWorkspace::kill(ChannelId channel, const Component& source, KillSide side) {
  const std::size_t k = index_of(source, work_.truncation());
  const auto pair = engine_.pair_containing(channel, k);
  if (!pair || (side == KillSide::lower ? pair->lower : pair->upper) != k) {
    throw std::logic_error("channel " + std::string(channel_name(channel)) +
                           " has no usable pair for " + to_string(source));
  }
  const cplx ql = work_[pair->lower];
  const cplx qu = work_[pair->upper];
  const double w = std::abs(pair->omega);
  PulseParams pp = side == KillSide::lower ? solve_kill_lower(ql, qu, w) : solve_kill_upper(ql, qu, w);
  // A negative matrix element rotates the other way round; compensate with
  // the phase.
  if (pair->omega < 0.0 && pp.x != 0.0) pp.theta = wrap_phase(pp.theta + kPi);

  const Pulse pulse{channel, pp.x, pp.theta, source};
  if (options_.on_solve) options_.on_solve({pulse, side, ql, qu, pair->omega});
  engine_.apply(work_, pulse);
  pulses_.push_back(pulse);
}

void build_A(SynthesisWorkspace& ws, int j, int nx, LevelShift shift) {
  check_row(ws, j, nx);
  const LadderChannels& ch = ladder(shift);
  if (nx == j) {
    // Empty ladder: only the trailing carrier pulse remains.
    ws.kill(ch.a_carrier, {{j, 0, 0}, ch.mid}, KillSide::upper);
    return;
  }
  sweep_row(ws, j, nx, ch.a_exchange, ch.a_carrier, ch.low, ch.mid);
}

void build_B(SynthesisWorkspace& ws, int j, int nx, LevelShift shift) {
  check_row(ws, j, nx);
  const LadderChannels& ch = ladder(shift);
  ws.kill(ch.b_carrier, {{nx, 0, j - nx}, ch.high}, KillSide::upper);
  sweep_row(ws, j, nx, ch.b_exchange, ch.b_carrier, ch.mid, ch.high);
}

void build_C(SynthesisWorkspace& ws, int j, int nx, LevelShift shift) {
  check_row(ws, j, nx);
  if (nx == j) throw DomainError("build_C: row n_x = J has no x-raising partner");
  const LadderChannels& ch = ladder(shift);
  ws.kill(ch.c_exchange, {{nx, j - nx, 0}, ch.low}, KillSide::lower);
}

void build_U_abc(SynthesisWorkspace& ws, int j) { build_U(ws, j, LevelShift::abc, false); }

void build_U_bcd(SynthesisWorkspace& ws, int j) { build_U(ws, j, LevelShift::bcd, true); }

void bridge(SynthesisWorkspace& ws, int j) {
  if (j < 1 || j > ws.work().truncation().jmax()) {
    throw DomainError("bridge: J=" + std::to_string(j) + " outside [1, jmax]");
  }
  ws.kill(ChannelId::H9, {{j, 0, 0}, Level::a}, KillSide::lower);
}

CompileResult deevolve(const StateVector& target, const LambDickeParams& ld, const TargetTag& tag,
                       const CompileOptions& options) {
  if (!supported_on_level_a(target)) {
    throw DomainError("target must be supported on electronic level a only");
  }
  if (std::abs(target.norm() - 1.0) > kNormTolerance) {
    throw DomainError("target must be normalized");
  }
  const Truncation t = target.truncation();
  const Engine engine(t, ld);
  SynthesisWorkspace ws(engine, target, options);

  for (int j = t.jmax(); j >= 1; --j) {
    build_U_abc(ws, j);
    build_U_bcd(ws, j - 1);
    bridge(ws, j);
    if (options.on_stage) options.on_stage(j, ws.work());
  }
  build_U_abc(ws, 0);
  if (options.on_stage) options.on_stage(0, ws.work());

  CompileResult res;
  res.deevolution.pulses = ws.pulses();
  res.deevolution.lamb_dicke = ld;
  res.deevolution.truncation = t;
  res.deevolution.direction = Direction::deevolution;
  res.deevolution.target = tag;
  res.preparation = dagger_schedule(res.deevolution);
  res.final_residual = 1.0 - std::norm(ws.work().at({{0, 0, 0}, Level::a}));
  res.pulse_count = res.deevolution.pulses.size();
  return res;
}

std::size_t pulse_count_model(int jmax) {
  const Truncation t(jmax);
  std::mt19937_64 rng(0x5eedc0deu + static_cast<unsigned>(jmax));
  std::normal_distribution<double> gauss;
  StateVector target(t);
  for (std::size_t k = 0; k < target.size(); k += kNumLevels) target[k] = {gauss(rng), gauss(rng)};
  target.normalize();
  return deevolve(target, LambDickeParams{}).pulse_count;
}

}  // namespace ionsynth
