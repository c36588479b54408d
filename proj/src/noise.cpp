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

#include "ionsynth/noise.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace ionsynth {

void validate(const NoiseModel& nm) {
  if (!std::isfinite(nm.delta) || !std::isfinite(nm.delta_theta) || nm.delta < 0.0 ||
      nm.delta_theta < 0.0) {
    throw DomainError("noise half-widths must be finite and non-negative");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64(splitmix64(seed) ^ splitmix64(~index)));
}

Schedule perturb(const Schedule& sch, const NoiseModel& nm, RandomStream& rng) {
  validate(nm);
  Schedule out = sch;
  for (Pulse& p : out.pulses) {
    p.x = std::max(0.0, rng.around(p.x, nm.delta));
    p.theta = wrap_phase(rng.around(p.theta, nm.delta_theta));
  }
  return out;
}

TrialResult run_trial(const StateVector& target, const Schedule& preparation,
                      const NoiseModel& nm, RandomStream& rng, const Engine& engine) {
  const Schedule noisy = perturb(preparation, nm, rng);
  StateVector out = StateVector::basis(engine.truncation(), {{0, 0, 0}, Level::a});
  engine.apply(out, noisy);

  TrialResult r;
  r.fidelity = std::min(1.0, fidelity_to_target(out, target));
  try {
    const Projection proj = project_level(out, Level::a);
    r.level_a_probability = proj.probability;
    r.postselect_fidelity = std::min(1.0, std::norm(overlap(proj.state, target)));
  } catch (const NoSupportError&) {
    r.level_a_probability = 0.0;
    r.postselect_fidelity = 0.0;
  }
  return r;
}

TrialStats run_trials(const StateVector& target, const Schedule& preparation,
                      const NoiseModel& nm, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw DomainError("run_trials: need at least one trial");
  validate(nm);
  if (!(target.truncation() == preparation.truncation)) {
    throw DomainError("target and schedule truncations differ");
  }
  const Engine engine(preparation.truncation, preparation.lamb_dicke);

  std::vector<TrialResult> results(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n; k += stride) {
      RandomStream rng = RandomStream::substream(seed, k);
      results[k] = run_trial(target, preparation, nm, rng, engine);
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            work(t, threads);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TrialStats s;
  s.trials = n;
  for (const TrialResult& r : results) {
    s.fid_mean += r.fidelity;
    s.fid_post_mean += r.postselect_fidelity;
    s.efficiency_mean += r.level_a_probability;
  }
  const auto dn = static_cast<double>(n);
  s.fid_mean /= dn;
  s.fid_post_mean /= dn;
  s.efficiency_mean /= dn;
  if (n > 1) {
    double ss = 0.0;
    for (const TrialResult& r : results) ss += (r.fidelity - s.fid_mean) * (r.fidelity - s.fid_mean);
    s.fid_std = std::sqrt(ss / (dn - 1.0));
  }
  return s;
}

SweepReport sweep(const StateVector& target, const Schedule& preparation,
                  const std::vector<NoiseModel>& grid, std::size_t n, std::uint64_t seed,
                  std::string target_description, unsigned threads) {
  if (grid.empty()) throw DomainError("sweep: empty noise grid");
  SweepReport report;
  report.seed = seed;
  report.target = std::move(target_description);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    const std::uint64_t row_seed = splitmix64(seed ^ static_cast<std::uint64_t>(r));
    report.rows.push_back({grid[r], run_trials(target, preparation, grid[r], n, row_seed, threads)});
  }
  return report;
}

}  // namespace ionsynth
