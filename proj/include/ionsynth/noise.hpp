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

// Technical-noise Monte Carlo over preparation schedules.
//
// Each pulse's interaction length and phase are redrawn uniformly within a
// half-width around the ideal values, the noisy program is run from
// |0,0,0;a>, and the output is scored against target (x) |a>, with and
// without post-selection on level a.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ionsynth/pulse.hpp"

namespace ionsynth {

struct NoiseModel {
  /// Half-width of the uniform interaction-length error (absolute).
  double delta = 0.0;
  /// Half-width of the uniform phase error, radians.
  double delta_theta = 0.0;
};

void validate(const NoiseModel& nm);

/// Deterministic uniform stream. Substreams for (seed, index) are derived by
/// SplitMix64 so trials can run in any order with identical results.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [center - half_width, center + half_width).
  double around(double center, double half_width) {
    return center + half_width * (2.0 * uniform() - 1.0);
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Redraws every pulse independently; negative lengths are clamped to 0.
Schedule perturb(const Schedule& sch, const NoiseModel& nm, RandomStream& rng);

struct TrialResult {
  double fidelity = 0.0;
  /// Fidelity of the output conditioned on finding the ion in level a.
  double postselect_fidelity = 0.0;
  double level_a_probability = 0.0;
};

/// One noisy preparation. `target` is the vibrational target on level a.
TrialResult run_trial(const StateVector& target, const Schedule& preparation,
                      const NoiseModel& nm, RandomStream& rng, const Engine& engine);

struct TrialStats {
  std::size_t trials = 0;
  double fid_mean = 0.0;
  double fid_std = 0.0;  // sample standard deviation, 0 for one trial
  double fid_post_mean = 0.0;
  double efficiency_mean = 0.0;
};

/// Runs n independent trials. Trial k uses RandomStream::substream(seed, k);
/// aggregation sums in trial order. threads = 0 picks the hardware count.
TrialStats run_trials(const StateVector& target, const Schedule& preparation,
                      const NoiseModel& nm, std::size_t n, std::uint64_t seed,
                      unsigned threads = 0);

struct SweepRow {
  NoiseModel noise;
  TrialStats stats;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
  std::string target;
};

/// One row per grid point. Row r draws from seed splitmix64(seed ^ r), so
/// rows do not share random numbers.
SweepReport sweep(const StateVector& target, const Schedule& preparation,
                  const std::vector<NoiseModel>& grid, std::size_t n, std::uint64_t seed,
                  std::string target_description = {}, unsigned threads = 0);

}  // namespace ionsynth
