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

#include <cmath>

#include "ionsynth/kernels.hpp"

namespace ionsynth::kernels {

void rotate_pairs_scalar(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  const double ec = std::cos(theta);
  const double es = std::sin(theta);
  const std::size_t n = pairs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = x * pairs.omega[k];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    cplx& u = amps[pairs.lower[k]];
    cplx& v = amps[pairs.upper[k]];
    const double ur = u.real(), ui = u.imag();
    const double vr = v.real(), vi = v.imag();
    u = {c * ur + s * (ec * vi + es * vr), c * ui - s * (ec * vr - es * vi)};
    v = {c * vr + s * (ec * ui - es * ur), c * vi - s * (ec * ur + es * ui)};
  }
}

cplx inner_scalar(std::span<const cplx> u, std::span<const cplx> v) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    re += u[k].real() * v[k].real() + u[k].imag() * v[k].imag();
    im += u[k].real() * v[k].imag() - u[k].imag() * v[k].real();
  }
  return {re, im};
}

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    s[k] = std::sin(x[k]);
    c[k] = std::cos(x[k]);
  }
}

}  // namespace ionsynth::kernels
