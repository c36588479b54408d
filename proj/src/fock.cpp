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

#include "ionsynth/fock.hpp"

#include <algorithm>
#include <cmath>

#include "ionsynth/kernels.hpp"

namespace ionsynth {

char level_char(Level l) { return static_cast<char>('a' + static_cast<int>(l)); }

Level level_from_char(char ch) {
  if (ch < 'a' || ch > 'd') {
    throw DomainError(std::string("unknown electronic level '") + ch + "'");
  }
  return static_cast<Level>(ch - 'a');
}

std::string to_string(const Component& c) {
  return "|" + std::to_string(c.occ.nx) + "," + std::to_string(c.occ.ny) + "," +
         std::to_string(c.occ.nz) + ";" + level_char(c.level) + ">";
}

Truncation::Truncation(int jmax) : jmax_(jmax) {
  if (jmax < 0) throw DomainError("jmax must be non-negative");
}

std::size_t Truncation::vib_count_below(int j) {
  if (j <= 0) return 0;
  const auto n = static_cast<std::size_t>(j);
  return n * (n + 1) * (n + 2) / 6;
}

bool Truncation::contains(const Occupation& o) const {
  return o.nx >= 0 && o.ny >= 0 && o.nz >= 0 && o.total() <= jmax_;
}

std::pair<std::size_t, std::size_t> Truncation::subspace_range(int j) const {
  if (j < 0 || j > jmax_) throw DomainError("subspace J outside truncation");
  return {kNumLevels * vib_count_below(j), kNumLevels * vib_count_below(j + 1)};
}

std::vector<Component> enumerate_basis(const Truncation& t) {
  std::vector<Component> out;
  out.reserve(t.dim());
  for (int j = 0; j <= t.jmax(); ++j) {
    for (int nx = 0; nx <= j; ++nx) {
      for (int ny = 0; ny <= j - nx; ++ny) {
        for (Level l : kAllLevels) out.push_back({{nx, ny, j - nx - ny}, l});
      }
    }
  }
  return out;
}

std::size_t index_of(const Component& c, const Truncation& t) {
  if (!t.contains(c)) throw DomainError("component " + to_string(c) + " outside truncation");
  const auto j = static_cast<std::size_t>(c.occ.total());
  const auto nx = static_cast<std::size_t>(c.occ.nx);
  // Rows n_x' < n_x of H_J hold J - n_x' + 1 states each.
  const std::size_t vib = Truncation::vib_count_below(static_cast<int>(j)) + nx * (j + 1) -
                          (nx * nx - nx) / 2 + static_cast<std::size_t>(c.occ.ny);
  return kNumLevels * vib + static_cast<std::size_t>(c.level);
}

Component component_of(std::size_t k, const Truncation& t) {
  if (k >= t.dim()) throw DomainError("basis index " + std::to_string(k) + " out of range");
  const auto level = static_cast<Level>(k % kNumLevels);
  std::size_t vib = k / kNumLevels;
  int j = 0;
  while (Truncation::vib_count_below(j + 1) <= vib) ++j;
  vib -= Truncation::vib_count_below(j);
  int nx = 0;
  while (vib >= static_cast<std::size_t>(j - nx + 1)) {
    vib -= static_cast<std::size_t>(j - nx + 1);
    ++nx;
  }
  const int ny = static_cast<int>(vib);
  return {{nx, ny, j - nx - ny}, level};
}

StateVector::StateVector(Truncation t) : trunc_(t), amps_(t.dim(), cplx{}) {}

StateVector::StateVector(Truncation t, std::vector<cplx> amplitudes)
    : trunc_(t), amps_(std::move(amplitudes)) {
  if (amps_.size() != trunc_.dim()) {
    throw DomainError("amplitude count " + std::to_string(amps_.size()) +
                      " does not match basis dimension " + std::to_string(trunc_.dim()));
  }
}

StateVector StateVector::basis(Truncation t, const Component& c) {
  StateVector s(t);
  s.at(c) = 1.0;
  return s;
}

cplx& StateVector::at(const Component& c) { return amps_[index_of(c, trunc_)]; }
const cplx& StateVector::at(const Component& c) const { return amps_[index_of(c, trunc_)]; }

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const cplx& z : amps_) acc += std::norm(z);
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  for (cplx& z : amps_) z /= n;
}

double StateVector::subspace_population(int j) const {
  const auto [first, last] = trunc_.subspace_range(j);
  double acc = 0.0;
  for (std::size_t k = first; k < last; ++k) acc += std::norm(amps_[k]);
  return acc;
}

double StateVector::level_population(Level l) const {
  double acc = 0.0;
  for (std::size_t k = static_cast<std::size_t>(l); k < amps_.size(); k += kNumLevels) {
    acc += std::norm(amps_[k]);
  }
  return acc;
}

cplx overlap(const StateVector& u, const StateVector& v) {
  if (!(u.truncation() == v.truncation())) throw DomainError("overlap: truncation mismatch");
  return kernels::inner(u.amplitudes(), v.amplitudes());
}

bool supported_on_level_a(const StateVector& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k % kNumLevels != 0 && s[k] != cplx{}) return false;
  }
  return true;
}

int max_support_total(const StateVector& s) {
  for (std::size_t k = s.size(); k-- > 0;) {
    if (s[k] != cplx{}) return component_of(k, s.truncation()).occ.total();
  }
  return -1;
}

StateVector embed(const StateVector& s, Truncation t) {
  if (max_support_total(s) > t.jmax()) {
    throw DomainError("state has support beyond jmax=" + std::to_string(t.jmax()));
  }
  StateVector out(t);
  const std::size_t n = std::min(s.size(), out.size());
  for (std::size_t k = 0; k < n; ++k) out[k] = s[k];
  return out;
}

double fidelity_to_target(const StateVector& out, const StateVector& target) {
  if (!supported_on_level_a(target)) {
    throw DomainError("fidelity target must be supported on level a only");
  }
  return std::norm(overlap(out, target));
}

Projection project_level(const StateVector& s, Level lvl) {
  StateVector p(s.truncation());
  for (std::size_t k = static_cast<std::size_t>(lvl); k < s.size(); k += kNumLevels) p[k] = s[k];
  const double prob = p.norm_squared();
  if (prob == 0.0) {
    throw NoSupportError(std::string("no support on level ") + level_char(lvl));
  }
  const double n = std::sqrt(prob);
  for (std::size_t k = static_cast<std::size_t>(lvl); k < p.size(); k += kNumLevels) p[k] /= n;
  return {std::move(p), prob};
}

}  // namespace ionsynth
