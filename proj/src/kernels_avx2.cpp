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

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma on
// x86-64; callers reach it only after the runtime CPU check in the dispatcher.

#include <cmath>

#include "ionsynth/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace ionsynth::kernels {

#if defined(__AVX2__) && defined(__FMA__)

namespace {

// pi/2 split into three pieces of 33 significant bits (fdlibm pio2_1..3).
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624871116645580e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kReductionLimit = 1048576.0;  // 2^20

inline __m256d poly6(__m256d z, const double (&k)[6]) {
  __m256d p = _mm256_set1_pd(k[0]);
  for (int i = 1; i < 6; ++i) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(k[i]));
  return p;
}

// Minimax coefficients on [-pi/4, pi/4] (Cephes sin.c).
constexpr double kSinCoef[6] = {1.58962301576546568060E-10, -2.50507477628578072866E-8,
                                2.75573136213857245213E-6,  -1.98412698295895385996E-4,
                                8.33333333332211858878E-3,  -1.66666666666666307295E-1};
constexpr double kCosCoef[6] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9,
                                -2.75573141792967388112E-7, 2.48015872888517045348E-5,
                                -1.38888888888730564116E-3, 4.16666666666665929218E-2};

// Caller guarantees |x| < kReductionLimit on every lane.
inline void sincos4(__m256d x, __m256d& sin_out, __m256d& cos_out) {
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSinCoef), r);
  __m256d c = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
  c = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCosCoef), c);

  // Quadrant q = n mod 4: (sin, cos) = (s, c), (c, -s), (-s, -c), (-c, s).
  const __m128i q = _mm256_cvtpd_epi32(n);
  const __m256i q64 = _mm256_cvtepi32_epi64(q);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(q64, one), one));
  const __m256d sin_sign =
      _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(q64, two), 62));
  const __m256d cos_sign = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(q64, one), two), 62));

  sin_out = _mm256_xor_pd(_mm256_blendv_pd(s, c, swap), sin_sign);
  cos_out = _mm256_xor_pd(_mm256_blendv_pd(c, s, swap), cos_sign);
}

inline bool in_reduction_range(__m256d x) {
  const __m256d abs_x = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const __m256d ok = _mm256_cmp_pd(abs_x, _mm256_set1_pd(kReductionLimit), _CMP_LT_OQ);
  return _mm256_movemask_pd(ok) == 0xF;
}

inline void sincos4_safe(__m256d x, __m256d& s, __m256d& c) {
  if (in_reduction_range(x)) {
    sincos4(x, s, c);
    return;
  }
  alignas(32) double xs[4], ss[4], cs[4];
  _mm256_store_pd(xs, x);
  for (int i = 0; i < 4; ++i) {
    ss[i] = std::sin(xs[i]);
    cs[i] = std::cos(xs[i]);
  }
  s = _mm256_load_pd(ss);
  c = _mm256_load_pd(cs);
}

}  // namespace

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d sv, cv;
    sincos4_safe(_mm256_loadu_pd(x.data() + k), sv, cv);
    _mm256_storeu_pd(s.data() + k, sv);
    _mm256_storeu_pd(c.data() + k, cv);
  }
  sincos_scalar(x.subspan(k), s.subspan(k), c.subspan(k));
}

void rotate_pairs_avx2(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  const __m256d ec = _mm256_set1_pd(std::cos(theta));
  const __m256d es = _mm256_set1_pd(std::sin(theta));
  const __m256d xv = _mm256_set1_pd(x);
  double* base = reinterpret_cast<double*>(amps.data());
  const std::size_t n = pairs.size();

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d s, c;
    sincos4_safe(_mm256_mul_pd(xv, _mm256_loadu_pd(pairs.omega.data() + k)), s, c);

    const __m128i lo = _mm_slli_epi32(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(pairs.lower.data() + k)), 1);
    const __m128i hi = _mm_slli_epi32(
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(pairs.upper.data() + k)), 1);
    const __m256d ur = _mm256_i32gather_pd(base, lo, 8);
    const __m256d ui = _mm256_i32gather_pd(base + 1, lo, 8);
    const __m256d vr = _mm256_i32gather_pd(base, hi, 8);
    const __m256d vi = _mm256_i32gather_pd(base + 1, hi, 8);

    // u' = c u - i e^{i theta} s v ; v' = c v - i e^{-i theta} s u
    const __m256d a1 = _mm256_fmadd_pd(ec, vi, _mm256_mul_pd(es, vr));
    const __m256d a2 = _mm256_fmsub_pd(ec, vr, _mm256_mul_pd(es, vi));
    const __m256d b1 = _mm256_fmsub_pd(ec, ui, _mm256_mul_pd(es, ur));
    const __m256d b2 = _mm256_fmadd_pd(ec, ur, _mm256_mul_pd(es, ui));

    alignas(32) double nur[4], nui[4], nvr[4], nvi[4];
    _mm256_store_pd(nur, _mm256_fmadd_pd(c, ur, _mm256_mul_pd(s, a1)));
    _mm256_store_pd(nui, _mm256_fnmadd_pd(s, a2, _mm256_mul_pd(c, ui)));
    _mm256_store_pd(nvr, _mm256_fmadd_pd(c, vr, _mm256_mul_pd(s, b1)));
    _mm256_store_pd(nvi, _mm256_fnmadd_pd(s, b2, _mm256_mul_pd(c, vi)));
    for (int i = 0; i < 4; ++i) {
      amps[pairs.lower[k + i]] = {nur[i], nui[i]};
      amps[pairs.upper[k + i]] = {nvr[i], nvi[i]};
    }
  }
  if (k < n) {
    const PairView tail{pairs.lower.subspan(k), pairs.upper.subspan(k), pairs.omega.subspan(k)};
    rotate_pairs_scalar(amps, tail, x, theta);
  }
}

cplx inner_avx2(std::span<const cplx> u, std::span<const cplx> v) {
  const double* a = reinterpret_cast<const double*>(u.data());
  const double* b = reinterpret_cast<const double*>(v.data());
  const std::size_t n = u.size();
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d av = _mm256_loadu_pd(a + 2 * k);
    const __m256d bv = _mm256_loadu_pd(b + 2 * k);
    acc_re = _mm256_fmadd_pd(av, bv, acc_re);
    // [ur*vi, ui*vr] per complex lane
    acc_im = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), acc_im);
  }
  alignas(32) double re[4], im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  cplx out{(re[0] + re[2]) + (re[1] + re[3]), (im[0] + im[2]) - (im[1] + im[3])};
  if (k < n) out += inner_scalar(u.subspan(k), v.subspan(k));
  return out;
}

#else  // no AVX2 in this build; the dispatcher never selects these

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) {
  sincos_scalar(x, s, c);
}
void rotate_pairs_avx2(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  rotate_pairs_scalar(amps, pairs, x, theta);
}
cplx inner_avx2(std::span<const cplx> u, std::span<const cplx> v) { return inner_scalar(u, v); }

#endif

}  // namespace ionsynth::kernels
