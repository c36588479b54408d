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

// Data-parallel inner loops of the simulator.
//
// Every kernel has a portable scalar reference and SIMD variants (AVX2+FMA on
// x86-64, NEON on AArch64). The dispatched entry points pick the best variant
// supported by the running CPU once per process; setting the environment
// variable IONSYNTH_ISA=scalar forces the reference kernels.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace ionsynth::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);
/// Compiled in and supported by this CPU.
bool isa_available(Isa isa);
/// Variant used by the dispatched entry points.
Isa active_isa();

/// Disjoint index pairs of one channel, structure-of-arrays. Entry k couples
/// amplitude lower[k] (lower electronic level) with upper[k] at coupling
/// strength omega[k].
struct PairView {
  std::span<const std::uint32_t> lower;
  std::span<const std::uint32_t> upper;
  std::span<const double> omega;

  std::size_t size() const { return omega.size(); }
};

// Pair rotation by phi_k = x * omega[k] with coupling phase theta:
//   u' = cos(phi) u - i e^{+i theta} sin(phi) v
//   v' = cos(phi) v - i e^{-i theta} sin(phi) u
// where u = amps[lower[k]], v = amps[upper[k]].
void rotate_pairs_scalar(std::span<cplx> amps, const PairView& pairs, double x, double theta);
void rotate_pairs_avx2(std::span<cplx> amps, const PairView& pairs, double x, double theta);
void rotate_pairs_neon(std::span<cplx> amps, const PairView& pairs, double x, double theta);
void rotate_pairs(std::span<cplx> amps, const PairView& pairs, double x, double theta);

// sum_k conj(u[k]) v[k]
cplx inner_scalar(std::span<const cplx> u, std::span<const cplx> v);
cplx inner_avx2(std::span<const cplx> u, std::span<const cplx> v);
cplx inner_neon(std::span<const cplx> u, std::span<const cplx> v);
cplx inner(std::span<const cplx> u, std::span<const cplx> v);

// Elementwise sin and cos. The AVX2 version is a polynomial approximation
// accurate to a few ulp for |x| < 2^20; larger arguments fall back to libm.
void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c);
void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c);

}  // namespace ionsynth::kernels
