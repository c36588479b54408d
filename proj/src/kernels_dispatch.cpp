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

#include <cstdlib>
#include <string_view>

#include "ionsynth/kernels.hpp"

namespace ionsynth::kernels {

namespace {

struct KernelTable {
  Isa isa;
  void (*rotate)(std::span<cplx>, const PairView&, double, double);
  cplx (*inner)(std::span<const cplx>, std::span<const cplx>);
};

KernelTable select() {
  const char* env = std::getenv("IONSYNTH_ISA");
  const bool force_scalar = env != nullptr && std::string_view(env) == "scalar";
  if (!force_scalar && isa_available(Isa::avx2)) {
    return {Isa::avx2, rotate_pairs_avx2, inner_avx2};
  }
  if (!force_scalar && isa_available(Isa::neon)) {
    return {Isa::neon, rotate_pairs_neon, inner_neon};
  }
  return {Isa::scalar, rotate_pairs_scalar, inner_scalar};
}

const KernelTable& table() {
  static const KernelTable t = select();
  return t;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(IONSYNTH_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__) && defined(__ARM_NEON) && !defined(IONSYNTH_NO_SIMD)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return table().isa; }

void rotate_pairs(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  table().rotate(amps, pairs, x, theta);
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) { return table().inner(u, v); }

}  // namespace ionsynth::kernels
