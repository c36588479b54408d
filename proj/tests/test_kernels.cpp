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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ionsynth/kernels.hpp"
#include "ionsynth/pulse.hpp"
#include "test_util.hpp"

namespace ionsynth {
namespace {

using kernels::Isa;

struct RandomPairs {
  std::vector<std::uint32_t> lower, upper;
  std::vector<double> omega;
  kernels::PairView view() const { return {lower, upper, omega}; }
};

// Disjoint random pairs over [0, dim).
RandomPairs random_pairs(std::size_t dim, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> w(-3.0, 3.0);
  RandomPairs p;
  for (std::size_t i = 0; i < count; ++i) {
    p.lower.push_back(perm[2 * i]);
    p.upper.push_back(perm[2 * i + 1]);
    p.omega.push_back(w(rng));
  }
  return p;
}

std::vector<cplx> random_amps(std::size_t n, std::mt19937_64& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = testing::random_cplx(rng);
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

TEST(Kernels, ScalarRotationMatchesClosedForm) {
  // One pair, u' = cos u - i e^{i theta} sin v, v' = cos v - i e^{-i theta} sin u.
  std::vector<cplx> amps{{0.3, -0.2}, {0.5, 0.7}};
  const std::vector<std::uint32_t> lo{0}, up{1};
  const std::vector<double> om{1.7};
  const double x = 0.4, th = 0.9;
  const cplx u = amps[0], v = amps[1];
  const double a = x * om[0];
  const cplx i(0.0, 1.0);
  const cplx u2 = std::cos(a) * u - i * std::polar(1.0, th) * std::sin(a) * v;
  const cplx v2 = std::cos(a) * v - i * std::polar(1.0, -th) * std::sin(a) * u;
  kernels::rotate_pairs_scalar(amps, {lo, up, om}, x, th);
  EXPECT_NEAR(std::abs(amps[0] - u2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(amps[1] - v2), 0.0, 1e-15);
}

TEST(Kernels, ScalarIsAvailable) {
  EXPECT_TRUE(kernels::isa_available(Isa::scalar));
  EXPECT_TRUE(kernels::isa_available(kernels::active_isa()));
}

void check_rotation_equivalence(Isa isa) {
  if (!kernels::isa_available(isa)) GTEST_SKIP() << kernels::isa_name(isa) << " not available";
  auto rotate = isa == Isa::avx2 ? kernels::rotate_pairs_avx2 : kernels::rotate_pairs_neon;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(0.0, 4.0), ths(-kPi, kPi);
  for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 255u}) {
    const std::size_t dim = 2 * count + 7;
    for (int rep = 0; rep < 20; ++rep) {
      const RandomPairs p = random_pairs(dim, count, rng);
      auto ref = random_amps(dim, rng);
      auto got = ref;
      const double x = xs(rng), th = ths(rng);
      kernels::rotate_pairs_scalar(ref, p.view(), x, th);
      rotate(got, p.view(), x, th);
      ASSERT_LE(max_diff(ref, got), 1e-14) << "count=" << count;
    }
  }
}

TEST(Kernels, Avx2RotationMatchesScalar) { check_rotation_equivalence(Isa::avx2); }
TEST(Kernels, NeonRotationMatchesScalar) { check_rotation_equivalence(Isa::neon); }

TEST(Kernels, Avx2RotationOnChannelTables) {
  if (!kernels::isa_available(Isa::avx2)) GTEST_SKIP();
  std::mt19937_64 rng(12);
  const Engine engine(Truncation(6), LambDickeParams{});
  for (ChannelId id : kAllChannels) {
    auto ref = random_amps(engine.truncation().dim(), rng);
    auto got = ref;
    kernels::rotate_pairs_scalar(ref, engine.pairs(id), 0.7, -2.1);
    kernels::rotate_pairs_avx2(got, engine.pairs(id), 0.7, -2.1);
    EXPECT_LE(max_diff(ref, got), 1e-14) << channel_name(id);
  }
}

void check_inner_equivalence(Isa isa) {
  if (!kernels::isa_available(isa)) GTEST_SKIP() << kernels::isa_name(isa) << " not available";
  auto inner = isa == Isa::avx2 ? kernels::inner_avx2 : kernels::inner_neon;
  std::mt19937_64 rng(13);
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 8u, 100u, 1001u}) {
    const auto u = random_amps(n, rng), v = random_amps(n, rng);
    const cplx ref = kernels::inner_scalar(u, v);
    const cplx got = inner(u, v);
    EXPECT_LE(std::abs(ref - got), 1e-12 * std::max(1.0, std::sqrt(double(n)))) << "n=" << n;
  }
}

TEST(Kernels, Avx2InnerMatchesScalar) { check_inner_equivalence(Isa::avx2); }
TEST(Kernels, NeonInnerMatchesScalar) { check_inner_equivalence(Isa::neon); }

TEST(Kernels, InnerScalarConjugatesFirst) {
  const std::vector<cplx> u{{0.0, 1.0}}, v{{1.0, 0.0}};
  EXPECT_EQ(kernels::inner_scalar(u, v), cplx(0.0, -1.0));
}

TEST(Kernels, SincosAccuracy) {
  std::mt19937_64 rng(14);
  std::vector<double> x;
  for (double v : {0.0, -0.0, 1e-300, 0.5, kPi / 4, kPi / 2, kPi, 1e3, -1e5, 1048575.0, 3e6, 1e12})
    x.push_back(v);
  std::uniform_real_distribution<double> small(-50.0, 50.0), big(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) x.push_back(small(rng));
  for (int i = 0; i < 2000; ++i) x.push_back(big(rng));
  std::vector<double> s(x.size()), c(x.size()), s2(x.size()), c2(x.size());
  kernels::sincos_scalar(x, s, c);
  kernels::sincos_avx2(x, s2, c2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ASSERT_EQ(s[i], std::sin(x[i]));
    ASSERT_EQ(c[i], std::cos(x[i]));
    ASSERT_NEAR(s2[i], s[i], 4e-16) << "x=" << x[i];
    ASSERT_NEAR(c2[i], c[i], 4e-16) << "x=" << x[i];
  }
}

TEST(Kernels, ForcedScalarDispatchAgrees) {
  // The dispatched kernel must agree with the reference whatever ISA was chosen.
  std::mt19937_64 rng(15);
  const RandomPairs p = random_pairs(101, 50, rng);
  auto ref = random_amps(101, rng);
  auto got = ref;
  kernels::rotate_pairs_scalar(ref, p.view(), 1.3, 0.2);
  kernels::rotate_pairs(got, p.view(), 1.3, 0.2);
  EXPECT_LE(max_diff(ref, got), 1e-14);
}

}  // namespace
}  // namespace ionsynth
