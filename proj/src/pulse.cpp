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

#include "ionsynth/pulse.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace ionsynth {

namespace {

double safe_arg(cplx z) { return z == cplx{} ? 0.0 : std::arg(z); }

}  // namespace

double wrap_phase(double theta) {
  if (theta > -kPi && theta <= kPi) return theta;
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::string to_string(Direction d) {
  return d == Direction::deevolution ? "deevolution" : "preparation";
}

Direction parse_direction(const std::string& s) {
  if (s == "deevolution") return Direction::deevolution;
  if (s == "preparation") return Direction::preparation;
  throw DomainError("unknown schedule direction '" + s + "'");
}

// The pair rotation has u' = cos(phi) u - i e^{i theta} sin(phi) v. Nulling u
// is  i e^{-i theta} u cos(phi) + v sin(phi) = 0, nulling v is
// i e^{i theta} v cos(phi) + u sin(phi) = 0.
PulseParams solve_kill_lower(cplx q_lower, cplx q_upper, double omega) {
  if (!(omega > 0.0)) throw DomainError("solve_kill_lower: omega must be positive");
  if (q_lower == cplx{}) return {0.0, 0.0};
  const double theta = wrap_phase(safe_arg(q_lower) - safe_arg(q_upper) - 0.5 * kPi);
  return {std::atan2(std::abs(q_lower), std::abs(q_upper)) / omega, theta};
}

PulseParams solve_kill_upper(cplx q_lower, cplx q_upper, double omega) {
  if (!(omega > 0.0)) throw DomainError("solve_kill_upper: omega must be positive");
  if (q_upper == cplx{}) return {0.0, 0.0};
  const double theta = wrap_phase(safe_arg(q_lower) - safe_arg(q_upper) + 0.5 * kPi);
  return {std::atan2(std::abs(q_upper), std::abs(q_lower)) / omega, theta};
}

Engine::Engine(Truncation t, LambDickeParams ld) : trunc_(t), ld_(ld) {
  validate(ld_);
  if (t.dim() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max() / 2)) {
    throw DomainError("truncation too large for 32-bit pair tables");
  }
  for (ChannelId id : kAllChannels) {
    Table& tab = tables_[static_cast<int>(id) - 1];
    tab.slot.assign(t.dim(), -1);
    for (const CoupledPair& p : coupled_pairs(channel_spec(id), t, ld_).pairs) {
      const auto lo = static_cast<std::uint32_t>(index_of(p.src, t));
      const auto hi = static_cast<std::uint32_t>(index_of(p.dst, t));
      const auto slot = static_cast<std::int32_t>(tab.omega.size());
      tab.lower.push_back(lo);
      tab.upper.push_back(hi);
      tab.omega.push_back(p.omega);
      tab.slot[lo] = slot;
      tab.slot[hi] = slot;
    }
  }
}

kernels::PairView Engine::pairs(ChannelId id) const {
  const Table& tab = tables_[static_cast<int>(id) - 1];
  return {tab.lower, tab.upper, tab.omega};
}

std::optional<Engine::PairRef> Engine::pair_containing(ChannelId id, std::size_t k) const {
  const Table& tab = tables_[static_cast<int>(id) - 1];
  if (k >= tab.slot.size() || tab.slot[k] < 0) return std::nullopt;
  const auto s = static_cast<std::size_t>(tab.slot[k]);
  return PairRef{tab.lower[s], tab.upper[s], tab.omega[s]};
}

void Engine::check(const StateVector& s) const {
  if (!(s.truncation() == trunc_)) {
    throw DomainError("state truncation (jmax=" + std::to_string(s.truncation().jmax()) +
                      ") does not match engine (jmax=" + std::to_string(trunc_.jmax()) + ")");
  }
}

void Engine::apply(StateVector& s, const Pulse& p) const {
  check(s);
  if (p.x == 0.0) return;
  kernels::rotate_pairs(s.amplitudes(), pairs(p.channel), p.x, p.theta);
}

void Engine::apply(StateVector& s, const Schedule& sch) const {
  check(s);
  if (!(sch.truncation == trunc_) || !(sch.lamb_dicke == ld_)) {
    throw DomainError("schedule metadata does not match engine");
  }
  for (const Pulse& p : sch.pulses) {
    if (p.x != 0.0) kernels::rotate_pairs(s.amplitudes(), pairs(p.channel), p.x, p.theta);
  }
}

StateVector apply_pulse(const StateVector& s, const Pulse& p, const Engine& engine) {
  StateVector out = s;
  engine.apply(out, p);
  return out;
}

StateVector apply_schedule(const StateVector& s, const Schedule& sch) {
  return apply_schedule(s, sch, Engine(sch.truncation, sch.lamb_dicke));
}

StateVector apply_schedule(const StateVector& s, const Schedule& sch, const Engine& engine) {
  StateVector out = s;
  engine.apply(out, sch);
  return out;
}

Schedule dagger_schedule(const Schedule& sch) {
  Schedule out = sch;
  out.pulses.assign(sch.pulses.rbegin(), sch.pulses.rend());
  for (Pulse& p : out.pulses) p.theta = p.theta > 0.0 ? p.theta - kPi : p.theta + kPi;
  out.direction = sch.direction == Direction::deevolution ? Direction::preparation
                                                          : Direction::deevolution;
  return out;
}

Eigen::MatrixXcd oracle_unitary(const Pulse& p, const Truncation& t, const LambDickeParams& ld) {
  const Eigen::MatrixXcd h = dense_hamiltonian(channel_spec(p.channel), p.theta, t, ld);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolver failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -p.x * lambda(i));
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

StateVector oracle_apply(const StateVector& s, const Pulse& p, const LambDickeParams& ld) {
  const Eigen::MatrixXcd u = oracle_unitary(p, s.truncation(), ld);
  const auto amps = s.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> in(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const Eigen::VectorXcd out = u * in;
  return StateVector(s.truncation(), std::vector<cplx>(out.data(), out.data() + out.size()));
}

}  // namespace ionsynth
