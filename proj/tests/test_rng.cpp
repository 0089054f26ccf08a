// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "axial/distributions.hpp"
#include "axial/rng.hpp"
#include "axial/validation.hpp"

namespace axial {
namespace {

constexpr std::size_t kMillion = 1'000'000;

TEST(Philox, KnownAnswerVectors) {
  // Random123 reference vectors for philox4x32-10.
  EXPECT_EQ(Philox4x32::apply({0, 0, 0, 0}, {0, 0}),
            (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(Philox4x32::apply({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              {0xffffffffu, 0xffffffffu}),
            (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(Philox4x32::apply({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              {0xa4093822u, 0x299f31d0u}),
            (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RngStream, SameSeedAndStreamRepeat) {
  RngStream a(99, 3), b(99, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, StreamsDiffer) {
  RngStream a(99, 0), b(99, 1), c(100, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    same_ab += x == b.next_u64();
    same_ac += x == c.next_u64();
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStream, AdjacentStreamsUncorrelated) {
  // Correlation of uniforms from streams i and i+1 at the same position.
  constexpr std::size_t n = 100000;
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream a(5, i), b(5, i + 1);
    const double x = uniform01(a), y = uniform01(b);
    sx += x; sy += y; sxy += x * y; sxx += x * x; syy += y * y;
  }
  const double dn = n;
  const double cov = sxy / dn - sx / dn * sy / dn;
  const double corr = cov / std::sqrt((sxx / dn - sx * sx / dn / dn) * (syy / dn - sy * sy / dn / dn));
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(dn));
}

TEST(Uniform01, RangeAndDeterminism) {
  RngStream a(1), b(1);
  const double v = uniform01(a);
  EXPECT_GE(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_EQ(v, uniform01(b));
}

TEST(Uniform01, MeanAndKs) {
  RngStream rng(2024);
  std::vector<double> xs(kMillion);
  double sum = 0;
  for (auto& x : xs) sum += (x = uniform01(rng));
  EXPECT_NEAR(sum / kMillion, 0.5, 0.002);
  EXPECT_LT(ks_statistic(xs, [](double x) { return x; }), ks_threshold(kMillion));
}

TEST(DrawSign, ValuesAndBalance) {
  RngStream rng(77);
  double sum = 0;
  for (std::size_t i = 0; i < kMillion; ++i) {
    const int s = draw_sign(rng);
    ASSERT_TRUE(s == 1 || s == -1);
    sum += s;
  }
  EXPECT_NEAR(sum / kMillion, 0.0, 0.004);
  RngStream a(8), b(8);
  EXPECT_EQ(draw_sign(a), draw_sign(b));
}

TEST(DrawCategorical, DegenerateMass) {
  RngStream rng(3);
  const std::vector<double> w = {0, 1, 0};
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(draw_categorical(w, rng), 1u);
}

TEST(DrawCategorical, EqualWeights) {
  RngStream rng(4);
  const std::vector<double> w = {1, 1};
  std::size_t ones = 0;
  for (std::size_t i = 0; i < kMillion; ++i) ones += draw_categorical(w, rng);
  EXPECT_NEAR(static_cast<double>(ones) / kMillion, 0.5, 0.004);
}

TEST(DrawCategorical, UnnormalizedWeightsMatchFrequencies) {
  // (0, λ1, Σ_{k>=2} λk) for λ = (4,3,2,1): the first-level weights.
  RngStream rng(5);
  const std::vector<double> w = {0, 4, 6};
  std::vector<std::size_t> counts(3);
  constexpr std::size_t n = 400000;
  for (std::size_t i = 0; i < n; ++i) ++counts[draw_categorical(w, rng)];
  EXPECT_EQ(counts[0], 0u);
  EXPECT_NEAR(counts[1] / double(n), 0.4, 4 * std::sqrt(0.24 / n));
}

TEST(DrawCategorical, Errors) {
  RngStream rng(6);
  const std::vector<double> zeros = {0, 0};
  const std::vector<double> negative = {1, -1};
  try {
    draw_categorical(zeros, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllZeroWeights);
  }
  try {
    draw_categorical(negative, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeWeight);
  }
}

TEST(DrawBeta, OneOneIsUniform) {
  RngStream rng(11);
  std::vector<double> xs(kMillion);
  for (auto& x : xs) x = draw_beta(1.0, 1.0, rng);
  EXPECT_LT(ks_statistic(xs, [](double x) { return x; }), ks_threshold(kMillion));
}

TEST(DrawBeta, ThreeHalvesOneMean) {
  RngStream rng(12);
  double sum = 0;
  for (std::size_t i = 0; i < kMillion; ++i) sum += draw_beta(1.5, 1.0, rng);
  EXPECT_NEAR(sum / kMillion, 0.6, 0.004);
}

TEST(DrawBeta, HalfHalfMean) {
  RngStream rng(13);
  double sum = 0;
  for (std::size_t i = 0; i < kMillion; ++i) sum += draw_beta(0.5, 0.5, rng);
  EXPECT_NEAR(sum / kMillion, 0.5, 0.005);
}

TEST(DrawBeta, KsAgainstIncompleteBetaForSamplerShapes) {
  // Every shape family the sampler uses, at p = 5.
  const std::vector<std::pair<double, double>> shapes = {
      {0.5, 2.0}, {1.5, 2.0}, {0.5, 3.0}, {1.5, 1.5}, {0.5, 2.5}, {0.5, 0.5}};
  for (const auto& [a, b] : shapes) {
    RngStream rng(14, static_cast<std::uint64_t>(a * 100 + b * 10));
    std::vector<double> xs(200000);
    for (auto& x : xs) {
      x = draw_beta(a, b, rng);
      ASSERT_GT(x, 0.0);
      ASSERT_LT(x, 1.0);
    }
    EXPECT_LT(ks_statistic(xs, [&](double x) { return beta_cdf(x, a, b); }), ks_threshold(xs.size()))
        << "Beta(" << a << "," << b << ")";
  }
}

TEST(DrawBeta, InvalidShape) {
  RngStream rng(15);
  EXPECT_THROW(draw_beta(0.0, 1.0, rng), Error);
  EXPECT_THROW(draw_beta(1.0, -2.0, rng), Error);
  EXPECT_THROW(draw_beta(1.0, std::nan(""), rng), Error);
}

TEST(DrawGamma, MeanMatchesShape) {
  for (double shape : {0.5, 1.0, 2.5}) {
    RngStream rng(16);
    double sum = 0;
    constexpr std::size_t n = 200000;
    for (std::size_t i = 0; i < n; ++i) sum += draw_gamma(shape, rng);
    EXPECT_NEAR(sum / n, shape, 4 * std::sqrt(shape / n));
  }
}

TEST(UniformSphere, UnitNormAndMoments) {
  RngStream rng(21);
  std::vector<double> x(3), sq(kMillion);
  double mean[3] = {0, 0, 0};
  for (std::size_t i = 0; i < kMillion; ++i) {
    draw_uniform_sphere(std::span<double>(x), rng);
    ASSERT_LT(std::abs(norm(x) - 1.0), 1e-12);
    for (int k = 0; k < 3; ++k) mean[k] += x[k];
    sq[i] = x[0] * x[0];
  }
  for (double m : mean) EXPECT_NEAR(m / kMillion, 0.0, 0.003);
  EXPECT_LT(ks_statistic(sq, [](double y) { return beta_cdf(y, 0.5, 1.0); }), ks_threshold(kMillion));
}

}  // namespace
}  // namespace axial
