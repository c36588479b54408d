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

// AArch64 NEON kernels. One float64x2_t holds one complex amplitude; the
// trigonometry stays in libm.

#include <cmath>

#include "ionsynth/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON) && !defined(IONSYNTH_NO_SIMD)
#include <arm_neon.h>
#endif

namespace ionsynth::kernels {

#if defined(__aarch64__) && defined(__ARM_NEON) && !defined(IONSYNTH_NO_SIMD)

void rotate_pairs_neon(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  const double ec = std::cos(theta);
  const double es = std::sin(theta);
  // -i e^{i theta} v = (es*vr + ec*vi, es*vi - ec*vr)
  // -i e^{-i theta} u = (-es*ur + ec*ui, -es*ui - ec*ur)
  const double pu[2] = {es, es};
  const double qu[2] = {ec, -ec};
  const double pv[2] = {-es, -es};
  const double qv[2] = {ec, -ec};
  const float64x2_t kpu = vld1q_f64(pu), kqu = vld1q_f64(qu);
  const float64x2_t kpv = vld1q_f64(pv), kqv = vld1q_f64(qv);
  double* base = reinterpret_cast<double*>(amps.data());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double phi = x * pairs.omega[k];
    const float64x2_t c = vdupq_n_f64(std::cos(phi));
    const float64x2_t s = vdupq_n_f64(std::sin(phi));
    double* pu_ptr = base + 2 * static_cast<std::size_t>(pairs.lower[k]);
    double* pv_ptr = base + 2 * static_cast<std::size_t>(pairs.upper[k]);
    const float64x2_t u = vld1q_f64(pu_ptr);
    const float64x2_t v = vld1q_f64(pv_ptr);
    const float64x2_t v_sw = vextq_f64(v, v, 1);  // (vi, vr)
    const float64x2_t u_sw = vextq_f64(u, u, 1);  // (ui, ur)
    const float64x2_t kick_u = vfmaq_f64(vmulq_f64(kpu, v), kqu, v_sw);
    const float64x2_t kick_v = vfmaq_f64(vmulq_f64(kpv, u), kqv, u_sw);
    vst1q_f64(pu_ptr, vfmaq_f64(vmulq_f64(c, u), s, kick_u));
    vst1q_f64(pv_ptr, vfmaq_f64(vmulq_f64(c, v), s, kick_v));
  }
}

cplx inner_neon(std::span<const cplx> u, std::span<const cplx> v) {
  const double* a = reinterpret_cast<const double*>(u.data());
  const double* b = reinterpret_cast<const double*>(v.data());
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const float64x2_t av = vld1q_f64(a + 2 * k);
    const float64x2_t bv = vld1q_f64(b + 2 * k);
    acc_re = vfmaq_f64(acc_re, av, bv);
    acc_im = vfmaq_f64(acc_im, av, vextq_f64(bv, bv, 1));
  }
  return {vgetq_lane_f64(acc_re, 0) + vgetq_lane_f64(acc_re, 1),
          vgetq_lane_f64(acc_im, 0) - vgetq_lane_f64(acc_im, 1)};
}

#else

void rotate_pairs_neon(std::span<cplx> amps, const PairView& pairs, double x, double theta) {
  rotate_pairs_scalar(amps, pairs, x, theta);
}
cplx inner_neon(std::span<const cplx> u, std::span<const cplx> v) { return inner_scalar(u, v); }

#endif

}  // namespace ionsynth::kernels
