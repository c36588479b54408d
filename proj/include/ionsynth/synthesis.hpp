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

// De-evolution compiler.
//
// A target on level a is driven back to |0,0,0;a> one subspace H_J at a time,
// from J = jmax down to 0. For each J:
//
//   U_abc(J)   concentrates H_J x {a,b,c} on |J,0,0;a>
//   U_bcd(J-1) concentrates H_{J-1} x {b,c,d} on |J-1,0,0;b>
//   bridge(J)  moves |J,0,0;a> into |J-1,0,0;b> with one red-sideband pulse
//
// and a final U_abc(0) collects everything on |0,0,0;a>. Within H_J the
// row with fixed n_x is swept by ladders:
//
//   A(J,n_x)  levels a,b : (exchange y<-z, carrier) pairs -> |n_x,J-n_x,0;a>
//   B(J,n_x)  levels b,c : carrier, then (exchange, carrier) -> |n_x,J-n_x,0;b>
//   C(J,n_x)  exchange x<-y, a->b : |n_x,J-n_x,0;a> -> |n_x+1,J-n_x-1,0;b>
//
// Every pulse is solved against the working amplitudes at the moment it is
// emitted and applied immediately, so side rotations of earlier pulses on
// other pairs are accounted for.

#include <cstddef>
#include <functional>
#include <vector>

#include "ionsynth/pulse.hpp"

namespace ionsynth {

/// Which amplitude of the pair a pulse was solved to null.
enum class KillSide : std::uint8_t { lower, upper };

/// Everything a solver saw when producing one pulse.
struct SolveRecord {
  Pulse pulse;
  KillSide side;
  cplx q_lower;
  cplx q_upper;
  double omega;
};

struct CompileOptions {
  std::function<void(const SolveRecord&)> on_solve;
  /// Called after the iteration that clears H_J (J >= 1), and with J = 0 at
  /// the end.
  std::function<void(int, const StateVector&)> on_stage;
};

/// Working state of one compilation: the state being de-evolved and the
/// pulses emitted so far.
class SynthesisWorkspace {
 public:
  SynthesisWorkspace(const Engine& engine, StateVector work, CompileOptions options = {});

  const Engine& engine() const { return engine_; }
  StateVector& work() { return work_; }
  const StateVector& work() const { return work_; }
  std::vector<Pulse>& pulses() { return pulses_; }
  const std::vector<Pulse>& pulses() const { return pulses_; }

  /// Solves a pulse of `channel` nulling the amplitude of `source`, applies
  /// it to the working state and records it.
  void kill(ChannelId channel, const Component& source, KillSide side);

 private:
  const Engine& engine_;
  StateVector work_;
  std::vector<Pulse> pulses_;
  CompileOptions options_;
};

/// Electronic levels used by a ladder: 0 for {a,b,c}, 1 for {b,c,d}.
enum class LevelShift : std::uint8_t { abc = 0, bcd = 1 };

void build_A(SynthesisWorkspace& ws, int j, int nx, LevelShift shift = LevelShift::abc);
void build_B(SynthesisWorkspace& ws, int j, int nx, LevelShift shift = LevelShift::abc);
void build_C(SynthesisWorkspace& ws, int j, int nx, LevelShift shift = LevelShift::abc);

/// Requires H_J free of level d and row n_x = 0 free of level c and of
/// |0,0,J;b>; both hold inside deevolve.
void build_U_abc(SynthesisWorkspace& ws, int j);
/// Level-shifted copy that also sweeps row n_x = 0 with a leading B ladder,
/// so it accepts arbitrary population on H_J x {b,c,d}.
void build_U_bcd(SynthesisWorkspace& ws, int j);
void bridge(SynthesisWorkspace& ws, int j);

struct CompileResult {
  Schedule deevolution;
  Schedule preparation;
  /// 1 - |<0,0,0;a|de-evolved>|^2
  double final_residual = 0.0;
  std::size_t pulse_count = 0;
};

/// Compiles the de-evolution and preparation programs for a unit-norm target
/// supported on level a.
CompileResult deevolve(const StateVector& target, const LambDickeParams& ld,
                       const TargetTag& tag = {}, const CompileOptions& options = {});

/// Number of pulses emitted for a truncation at jmax, obtained by compiling a
/// fixed pseudo-random full-support target.
std::size_t pulse_count_model(int jmax);

}  // namespace ionsynth
