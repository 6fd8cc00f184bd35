#include "trustsim/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "trustsim/errors.hpp"
#include "trustsim/rng.hpp"

using namespace trustsim;

namespace {

// (N, I2C) from the published neutral-user table.
const std::vector<Point> kTableOne{
    {20, 64.61},   {40, 78.29},   {60, 88.96},   {80, 95.00},   {100, 101.03},
    {200, 123.85}, {300, 138.81}, {400, 159.41}, {500, 164.58}, {600, 181.74},
    {700, 188.29}, {800, 192.70}, {900, 198.71}, {1000, 208.01}};

// (phi, runs converged) from the published fine-grained phi table.
const std::vector<Point> kFinePhi{
    {1.40, 100}, {1.41, 100}, {1.42, 100}, {1.43, 100}, {1.44, 100}, {1.45, 100}, {1.46, 100},
    {1.47, 94},  {1.48, 85},  {1.49, 86},  {1.50, 60},  {1.51, 54},  {1.52, 34},  {1.53, 26},
    {1.54, 30},  {1.55, 22},  {1.56, 13},  {1.57, 11},  {1.58, 4},   {1.59, 7},   {1.60, 3}};

void expect_rel(double actual, double expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::abs(expected))
      << "actual " << actual << " expected " << expected;
}

}  // namespace

TEST(MeanStddev, ClosedForms) {
  const auto a = mean_stddev(std::vector{2.0, 4.0});
  EXPECT_EQ(a.mean, 3.0);
  EXPECT_NEAR(a.stddev, std::sqrt(2.0), 1e-15);
  const auto b = mean_stddev(std::vector{5.0, 5.0, 5.0});
  EXPECT_EQ(b.mean, 5.0);
  EXPECT_EQ(b.stddev, 0.0);
  EXPECT_THROW(mean_stddev(std::vector{1.0}), InsufficientDataError);
  EXPECT_THROW(mean(std::vector<double>{}), DomainError);
}

TEST(PowerLawFit, ExactPowerLaw) {
  const std::vector<Point> pts{{1, 3}, {4, 6}, {9, 9}};
  const auto fit = power_law_fit(pts);
  EXPECT_EQ(fit.kind, FitKind::kPowerLaw);
  EXPECT_NEAR(fit.coefficients[0], 3.0, 1e-9);
  EXPECT_NEAR(fit.coefficients[1], 0.5, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
}

TEST(PowerLawFit, PublishedNeutralTable) {
  // Frozen from an independent numpy.polyfit on (ln N, ln I2C).
  const auto fit = power_law_fit(kTableOne);
  EXPECT_NEAR(fit.coefficients[0], 25.586390772094315, 1e-9);
  EXPECT_NEAR(fit.coefficients[1], 0.3021027247555709, 1e-12);
  EXPECT_NEAR(fit.r_squared, 0.9977443307875219, 1e-12);
  expect_rel(fit.coefficients[0], 25.586, 0.01);
  expect_rel(fit.coefficients[1], 0.3021, 0.01);
  expect_rel(fit.r_squared, 0.9977, 0.01);
}

TEST(PowerLawFit, Errors) {
  EXPECT_THROW(power_law_fit(std::vector<Point>{{1, 1}, {0, 2}}), DomainError);
  EXPECT_THROW(power_law_fit(std::vector<Point>{{1, 1}, {2, -2}}), DomainError);
  EXPECT_THROW(power_law_fit(std::vector<Point>{{2, 1}, {2, 3}}), RankError);
  EXPECT_THROW(power_law_fit(std::vector<Point>{{2, 1}}), RankError);
}

TEST(PowerLawFit, ScaleEquivariant) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({1 + 100 * rng.uniform(), 0.1 + 10 * rng.uniform()});
    const double k = 0.01 + 50 * rng.uniform();
    auto scaled = pts;
    for (auto& p : scaled) p.y *= k;
    const auto a = power_law_fit(pts);
    const auto b = power_law_fit(scaled);
    expect_rel(b.coefficients[0], k * a.coefficients[0], 1e-10);
    EXPECT_NEAR(b.coefficients[1], a.coefficients[1], 1e-10);
    EXPECT_NEAR(b.r_squared, a.r_squared, 1e-10);
  }
}

TEST(PowerLawFit, RecoversGeneratingCoefficients) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = 0.1 + 100 * rng.uniform();
    const double b = -2 + 4 * rng.uniform();
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) {
      const double x = 0.5 + 1000 * rng.uniform();
      pts.push_back({x, a * std::pow(x, b)});
    }
    const auto fit = power_law_fit(pts);
    expect_rel(fit.coefficients[0], a, 1e-9);
    EXPECT_NEAR(fit.coefficients[1], b, 1e-9 * std::max(1.0, std::abs(b)));
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  }
}

TEST(QuadraticFit, ExactParabola) {
  const auto fit = quadratic_fit(std::vector<Point>{{0, 0}, {1, 1}, {2, 4}});
  EXPECT_EQ(fit.kind, FitKind::kQuadratic);
  EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[2], 0.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(QuadraticFit, ConstantDataCountsAsPerfect) {
  const auto fit = quadratic_fit(std::vector<Point>{{0, 1}, {1, 1}, {2, 1}});
  EXPECT_NEAR(fit.coefficients[0], 0.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-12);
  EXPECT_NEAR(fit.coefficients[2], 1.0, 1e-12);
  EXPECT_EQ(fit.r_squared, 1.0);
}

TEST(QuadraticFit, NeedsThreeDistinctX) {
  EXPECT_THROW(quadratic_fit(std::vector<Point>{{0, 1}, {1, 2}, {1, 3}, {0, 4}}), RankError);
  EXPECT_THROW(quadratic_fit(std::vector<Point>{{0, 1}, {1, 2}}), RankError);
}

TEST(QuadraticFit, PublishedFineGridDecline) {
  // The declining segment phi >= 1.46 reproduces the published parabola;
  // reference values from an independent numpy.polyfit.
  std::vector<Point> window;
  std::copy_if(kFinePhi.begin(), kFinePhi.end(), std::back_inserter(window),
               [](const Point& p) { return p.x >= 1.455; });
  ASSERT_EQ(window.size(), 15u);
  const auto fit = quadratic_fit(window);
  expect_rel(fit.coefficients[0], 4226.7, 1e-3);
  expect_rel(fit.coefficients[1], -13689.0, 1e-3);
  expect_rel(fit.coefficients[2], 11084.0, 1e-3);
  EXPECT_NEAR(fit.r_squared, 0.973, 5e-4);
}

TEST(QuadraticFit, ResidualsOrthogonalToBasis) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({-5 + 10 * rng.uniform(), -50 + 100 * rng.uniform()});
    const auto fit = quadratic_fit(pts);
    double d0 = 0, d1 = 0, d2 = 0, s0 = 0, s1 = 0, s2 = 0;
    for (const auto& p : pts) {
      const double r = p.y - fit.evaluate(p.x);
      d0 += r;
      d1 += r * p.x;
      d2 += r * p.x * p.x;
      s0 += std::abs(p.y);
      s1 += std::abs(p.y * p.x);
      s2 += std::abs(p.y * p.x * p.x);
    }
    EXPECT_LE(std::abs(d0), 1e-8 * s0);
    EXPECT_LE(std::abs(d1), 1e-8 * s1);
    EXPECT_LE(std::abs(d2), 1e-8 * s2);
  }
}

TEST(QuadraticFit, RecoversGeneratingCoefficients) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const double c2 = -10 + 20 * rng.uniform();
    const double c1 = -10 + 20 * rng.uniform();
    const double c0 = -10 + 20 * rng.uniform();
    std::vector<Point> pts;
    for (int i = 0; i < 7; ++i) {
      const double x = -3 + 6 * rng.uniform();
      pts.push_back({x, (c2 * x + c1) * x + c0});
    }
    const auto fit = quadratic_fit(pts);
    expect_rel(fit.coefficients[0], c2, 1e-9);
    expect_rel(fit.coefficients[1], c1, 1e-9);
    expect_rel(fit.coefficients[2], c0, 1e-9);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-9);
  }
}

TEST(FiveNumberSummary, Examples) {
  const auto a = five_number_summary(std::vector{1.0, 2.0, 3.0, 4.0, 5.0});
  EXPECT_EQ(a.min, 1);
  EXPECT_EQ(a.q1, 2);
  EXPECT_EQ(a.median, 3);
  EXPECT_EQ(a.q3, 4);
  EXPECT_EQ(a.max, 5);
  const auto b = five_number_summary(std::vector{7.0});
  EXPECT_EQ(b.min, 7);
  EXPECT_EQ(b.q1, 7);
  EXPECT_EQ(b.median, 7);
  EXPECT_EQ(b.q3, 7);
  EXPECT_EQ(b.max, 7);
  EXPECT_EQ(five_number_summary(std::vector{0.0, 0.0, 0.0, 1.0}).median, 0.0);
  EXPECT_THROW(five_number_summary(std::vector<double>{}), DomainError);
}

TEST(FiveNumberSummary, InterpolatesBetweenOrderStatistics) {
  const auto s = five_number_summary(std::vector{4.0, 1.0, 3.0, 2.0});
  EXPECT_EQ(s.q1, 1.75);
  EXPECT_EQ(s.median, 2.5);
  EXPECT_EQ(s.q3, 3.25);
}

TEST(FiveNumberSummary, PermutationInvariantAndMonotone) {
  Rng rng(5);
  std::mt19937_64 shuffler(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(1 + rng.below(30));
    for (auto& x : xs) x = rng.uniform();
    const auto base = five_number_summary(xs);
    ASSERT_LE(base.min, base.q1);
    ASSERT_LE(base.q1, base.median);
    ASSERT_LE(base.median, base.q3);
    ASSERT_LE(base.q3, base.max);

    auto shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), shuffler);
    const auto perm = five_number_summary(shuffled);
    EXPECT_EQ(perm.min, base.min);
    EXPECT_EQ(perm.q1, base.q1);
    EXPECT_EQ(perm.median, base.median);
    EXPECT_EQ(perm.q3, base.q3);
    EXPECT_EQ(perm.max, base.max);

    xs.push_back(base.max + 1.0);
    const auto grown = five_number_summary(xs);
    EXPECT_EQ(grown.min, base.min);
    EXPECT_GT(grown.max, base.max);
  }
}
