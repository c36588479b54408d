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

// Truncated Hilbert space of three trap modes times four electronic levels.
//
// Basis kets |n_x,n_y,n_z> (x) |i> are kept for n_x+n_y+n_z <= jmax. The
// canonical order is: ascending total quanta J, then n_x, then n_y, then
// level a < b < c < d. Each subspace H_J therefore occupies one contiguous
// index range and the level is the fastest-varying index.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ionsynth {

using cplx = std::complex<double>;

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (out-of-truncation components, mismatched truncations, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown by project_level when the requested level carries no population.
class NoSupportError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Level : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

inline constexpr int kNumLevels = 4;
inline constexpr std::array<Level, kNumLevels> kAllLevels{Level::a, Level::b, Level::c, Level::d};

char level_char(Level l);
Level level_from_char(char ch);

struct Occupation {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  constexpr int total() const { return nx + ny + nz; }
  bool operator==(const Occupation&) const = default;
};

struct Component {
  Occupation occ;
  Level level = Level::a;

  bool operator==(const Component&) const = default;
};

std::string to_string(const Component& c);

/// Cutoff on the total number of trap quanta.
class Truncation {
 public:
  Truncation() = default;
  explicit Truncation(int jmax);

  int jmax() const { return jmax_; }

  /// Number of vibrational states with J <= jmax, C(jmax+3, 3).
  std::size_t vib_dim() const { return vib_count_below(jmax_ + 1); }
  std::size_t dim() const { return kNumLevels * vib_dim(); }

  /// Number of vibrational states with total quanta strictly below j.
  static std::size_t vib_count_below(int j);

  bool contains(const Occupation& o) const;
  bool contains(const Component& c) const { return contains(c.occ); }

  /// Half-open index range [first, last) of the subspace H_J (all levels).
  std::pair<std::size_t, std::size_t> subspace_range(int j) const;

  bool operator==(const Truncation&) const = default;

 private:
  int jmax_ = 0;
};

std::vector<Component> enumerate_basis(const Truncation& t);
std::size_t index_of(const Component& c, const Truncation& t);
Component component_of(std::size_t k, const Truncation& t);

/// Complex amplitudes over the canonical basis of a truncation.
class StateVector {
 public:
  StateVector() = default;
  /// Zero vector.
  explicit StateVector(Truncation t);
  StateVector(Truncation t, std::vector<cplx> amplitudes);

  /// Unit vector on a single basis component.
  static StateVector basis(Truncation t, const Component& c);

  const Truncation& truncation() const { return trunc_; }
  std::size_t size() const { return amps_.size(); }

  cplx& operator[](std::size_t k) { return amps_[k]; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  cplx& at(const Component& c);
  const cplx& at(const Component& c) const;

  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  double norm_squared() const;
  /// Divides by the Euclidean norm; throws DomainError for the zero vector.
  void normalize();
  /// Squared norm restricted to H_J (all levels).
  double subspace_population(int j) const;
  /// Squared norm of the components on one level.
  double level_population(Level l) const;

 private:
  Truncation trunc_;
  std::vector<cplx> amps_;
};

inline constexpr double kNormTolerance = 1e-12;

/// <u|v>: conjugate-linear in u.
cplx overlap(const StateVector& u, const StateVector& v);

/// |<out | target (x) a>|^2 for a target supported on level a only.
double fidelity_to_target(const StateVector& out, const StateVector& target);

struct Projection {
  StateVector state;
  double probability = 0.0;
};

/// Projects onto one electronic level and renormalizes. Throws
/// NoSupportError when the level block is empty.
Projection project_level(const StateVector& s, Level lvl);

/// True when every amplitude off level a is exactly zero.
bool supported_on_level_a(const StateVector& s);

/// Largest J with a nonzero amplitude, -1 for the zero vector.
int max_support_total(const StateVector& s);

/// Copies s into truncation t. Throws DomainError if s has support beyond
/// t.jmax().
StateVector embed(const StateVector& s, Truncation t);

}  // namespace ionsynth
