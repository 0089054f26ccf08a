// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "axial/validation.hpp"
#include "test_matrices.hpp"

namespace axial {
namespace {

TEST(KsStatistic, QuantilePointsAreClose) {
  constexpr std::size_t n = 1000;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = (i + 1.0) / (n + 1.0);
  EXPECT_LE(ks_statistic(xs, [](double x) { return x; }), 1.0 / (n + 1) + 1e-12);
}

TEST(KsStatistic, UniformSamplesPass) {
  constexpr std::size_t n = 100000;
  RngStream rng(31);
  std::vector<double> xs(n);
  for (auto& x : xs) x = uniform01(rng);
  EXPECT_LT(ks_statistic(xs, [](double x) { return x; }), ks_threshold(n));
}

TEST(KsStatistic, ConstantSamplesFail) {
  const std::vector<double> xs(100, 0.999);
  EXPECT_GT(ks_statistic(xs, [](double x) { return x; }), 0.99);
}

TEST(KsTwoSample, IdenticalAndDisjoint) {
  const std::vector<double> a = {1, 2, 3, 4};
  EXPECT_EQ(ks_two_sample(a, a), 0.0);
  EXPECT_EQ(ks_two_sample(a, {10, 11, 12}), 1.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5);
}

TEST(MarginalT1, IntegratesToOne) {
  boost::math::quadrature::tanh_sinh<double> quad;
  for (std::size_t p : {3u, 4u, 5u, 10u, 25u}) {
    std::vector<double> lambda(p);
    for (std::size_t k = 0; k < p; ++k) lambda[k] = static_cast<double>(p - k);
    const MarginalT1Density m(p, lambda);
    EXPECT_DOUBLE_EQ(m.weight_quadratic() + m.weight_tail(), 1.0);
    EXPECT_NEAR(quad.integrate([&](double t) { return m.pdf(t); }, -1.0, 1.0), 1.0, 1e-8) << p;
    // The CDF is the integral of the pdf.
    EXPECT_NEAR(quad.integrate([&](double t) { return m.pdf(t); }, -1.0, 0.37), m.cdf(0.37), 1e-8);
  }
}

TEST(RejectionSample, IdentityAcceptsEverything) {
  const auto d = test::density_of(Matrix::identity(4));
  const auto r = rejection_sample(d, 1000, 1);
  EXPECT_EQ(r.attempts, 1000u);
}

TEST(RejectionSample, AcceptanceRateMatchesEnvelope) {
  const auto d = test::density_of(test::diag({3, 2, 1}));
  const auto r = rejection_sample(d, 100000, 2);
  EXPECT_NEAR(r.acceptance_rate(), 6.0 / 9.0, 0.005);
  for (std::size_t i = 0; i < r.batch.count; ++i) ASSERT_LT(std::abs(norm(r.batch.row(i)) - 1), 1e-12);
}

TEST(SecondMoment, ClosedFormExamples) {
  const auto id = second_moment_closed_form(test::density_of(Matrix::identity(5)));
  EXPECT_LE(max_abs_diff(id, 0.2 * Matrix::identity(5)), 1e-15);

  const auto rank1 = second_moment_closed_form(test::density_of(test::diag({1, 0, 0})));
  EXPECT_LE(max_abs_diff(rank1, test::diag({0.6, 0.2, 0.2})), 1e-15);

  for (const auto& [name, a] : test::suite())
    EXPECT_NEAR(second_moment_closed_form(test::density_of(a)).trace(), 1.0, 1e-12) << name;
}

// The moment formula is derived by hand; confirm it against the rejection
// oracle alone before it is trusted anywhere else.
TEST(SecondMoment, ClosedFormAgreesWithOracle) {
  const std::vector<Matrix> matrices = {test::diag({1, 0, 0}), test::diag({100, 1, 1}),
                                        test::random_spd(7, test::kRandomSpdSeed)};
  std::uint64_t seed = 600;
  for (const auto& a : matrices) {
    const auto d = test::density_of(a);
    const auto oracle = rejection_sample(d, 1'000'000, seed++);
    EXPECT_LT(max_abs_diff(empirical_second_moment(oracle.batch), second_moment_closed_form(d)), 0.005);
  }
}

TEST(ValidateAll, IdentityPasses) {
  const auto reports = validate_all(test::density_of(Matrix::identity(3)), 100000, 1);
  EXPECT_EQ(reports.size(), 7u);
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.name << " " << r.statistic << " > " << r.threshold;
}

TEST(ValidateAll, LargeEigenvalueGapPasses) {
  for (const auto& r : validate_all(test::density_of(test::diag({100, 1, 1})), 100000, 2))
    EXPECT_TRUE(r.pass) << r.name << " " << r.statistic << " > " << r.threshold;
}

TEST(ValidateAll, ZeroEigenvaluePasses) {
  for (const auto& r : validate_all(test::density_of(test::diag({2, 1, 0})), 100000, 3))
    EXPECT_TRUE(r.pass) << r.name << " " << r.statistic << " > " << r.threshold;
}

TEST(ValidateAll, DimensionTwoUsesAngleMarginal) {
  const auto reports = validate_all(test::density_of(test::diag({5, 1})), 20000, 4);
  EXPECT_EQ(reports[2].name, "phi_star_ks");
  for (const auto& r : reports) EXPECT_TRUE(r.pass) << r.name;
}

TEST(ValidationReport, JsonShape) {
  const auto j = to_json(make_report("x", 0.1, 0.2, 10, 5));
  EXPECT_EQ(j.dump(), R"({"n":10,"name":"x","pass":true,"seed":5,"statistic":0.1,"threshold":0.2})");
}

}  // namespace
}  // namespace axial
