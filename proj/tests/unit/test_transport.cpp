#include "gci/transport.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace gci;

namespace {

Budgets quick(std::size_t n = 200000) {
  Budgets b;
  b.samples = n;
  return b;
}

ScalarField growth(double a) {
  return custom_field(1, [a](const Point& x) { return std::exp(a * x.squaredNorm()); }, "exp(+a x^2)");
}

}  // namespace

TEST(Transport, HalvingMapBetweenNormals) {
  const auto map = monotone_map(normal_density(1.0), normal_density(0.5));
  for (double x : {-3.0, -1.0, 0.0, 0.7, 2.5}) EXPECT_NEAR(map(x), x / 2, 1e-7);
  const auto c = contraction_check(map);
  EXPECT_NEAR(c.max_increment_ratio, 0.5, 1e-6);
  EXPECT_TRUE(c.passed);
  EXPECT_TRUE(oddness_check(map).passed);
  EXPECT_LT(map.push_forward_error(), 1e-8);
}

TEST(Transport, IdentityMap) {
  const auto map = monotone_map(normal_density(1.0), normal_density(1.0));
  EXPECT_TRUE(contraction_check(map).passed);
  for (std::size_t i = 0; i < map.x.size(); i += 100) EXPECT_NEAR(map.y[i], map.x[i], 1e-7);
}

TEST(Transport, ExpandingMapIsNotAContraction) {
  const auto map = monotone_map(normal_density(0.5), normal_density(1.0));
  const auto c = contraction_check(map);
  EXPECT_NEAR(c.max_increment_ratio, 2.0, 1e-3);
  EXPECT_FALSE(c.passed);
}

// Gaussian tilt exp(-x^2/2) of N(0,1) is N(0,1/2): T(x) = x / sqrt(2).
TEST(Transport, LogConcaveTiltContracts) {
  const auto target = tilted_normal(1.0, [](double x) { return std::exp(-x * x / 2); }, "exp(-x^2/2)");
  const auto map = monotone_map(normal_density(1.0), target);
  for (double x : {-2.0, 0.5, 1.5}) EXPECT_NEAR(map(x), x / std::sqrt(2.0), 1e-6);
  EXPECT_TRUE(contraction_check(map).passed);
}

TEST(Transport, AsymmetricTiltIsNotOdd) {
  const auto target = tilted_normal(1.0, [](double x) { return std::exp(-(x - 1) * (x - 1)); }, "shifted");
  const auto map = monotone_map(normal_density(1.0), target);
  EXPECT_FALSE(oddness_check(map).passed);
}

TEST(Transport, CsvHasHeaderAndOneRowPerPoint) {
  const auto map = monotone_map(normal_density(1.0), normal_density(1.0), 11);
  const std::string csv = to_csv(map);
  EXPECT_EQ(csv.rfind("x,T\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
}

TEST(Transport, GridMustBeOdd) { EXPECT_THROW(monotone_map(normal_density(1.0), normal_density(1.0), 10), std::invalid_argument); }

TEST(LogConcavity, GaussianBumpPassesAndGrowthFails) {
  EXPECT_TRUE(logconcavity_check(gaussian_bump(2, 0.7), 2000, 1).passed);
  EXPECT_FALSE(logconcavity_check(growth(0.2), 2000, 1).passed);
  EXPECT_TRUE(symmetry_check(gaussian_bump(2, 0.7), 500, 1).passed);
  EXPECT_FALSE(symmetry_check(gaussian_bump(1, 0.7, Point::Constant(1, 0.5)), 500, 1).passed);
}

TEST(Profiles, PhiNShape) {
  EXPECT_EQ(phi_n_eval(0.5, 4), 1.0);
  EXPECT_EQ(phi_n_eval(1.0, 4), 1.0);
  EXPECT_DOUBLE_EQ(phi_n_eval(1.125, 4), 0.5);
  EXPECT_EQ(phi_n_eval(1.25, 4), 0.0);
  EXPECT_TRUE(nonincreasing_check(phi_n_profile(4), 10.0).passed);
  EXPECT_TRUE(nonincreasing_check(exp_profile(0.5), 10.0).passed);
  EXPECT_FALSE(nonincreasing_check(power_profile(1.0), 10.0).passed);
}

TEST(TiltedMeasure, NormalizerOfGaussianTilt) {
  // E exp(-|X|^2/2) = 2^{-d/2}.
  const auto m = tilted_measure(gaussian_bump(2, 0.5), Matrix::Identity(2, 2), 200000, 3);
  EXPECT_LE(std::abs(m.normalizer - 0.5), 4 * m.normalizer_se);
}

// f = e^{-|x|^2/2}, phi = e^{-t/2}, d = 2: lhs = 1/3, rhs = 1/2 * 1/2.
TEST(Theorem41, ClosedFormInstance) {
  const auto r = verify_theorem_4_1(gaussian_bump(2, 0.5), Matrix::Identity(2, 2), exp_profile(0.5), quick(), 11);
  EXPECT_LE(std::abs(r.lhs.value - 1.0 / 3.0), 4 * r.lhs.std_error);
  EXPECT_LE(std::abs(r.rhs.value - 0.25), 4 * r.rhs.std_error);
  EXPECT_EQ(r.verdict, Verdict::confirmed);
}

// phi(t) = t breaks monotonicity: gap = (1/sqrt 2)(1/2 - 1).
TEST(Theorem41, IncreasingPhiGivesNegativeGap) {
  const auto r = verify_theorem_4_1(gaussian_bump(1, 0.5), Matrix::Identity(1, 1), power_profile(1.0), quick(), 12);
  EXPECT_EQ(r.verdict, Verdict::inapplicable_hypothesis);
  EXPECT_LE(std::abs(r.gap.value + 0.5 / std::sqrt(2.0)), 5 * r.gap.std_error);
}

TEST(Theorem41, GrowthTiltIsRejected) {
  const auto r = verify_theorem_4_1(growth(0.15), Matrix::Identity(1, 1), exp_profile(0.5), quick(50000), 13);
  EXPECT_EQ(r.verdict, Verdict::inapplicable_hypothesis);
  EXPECT_LT(r.gap.value, 0.0);
}

TEST(Corollary, SquareAgainstDisk) {
  const auto r = verify_corollary(ConvexBody::box({-1, -1}, {1, 1}), Matrix::Identity(2, 2), quick(), 14);
  const double disk = 1 - std::exp(-0.5);
  EXPECT_LE(std::abs(r.gap.value - disk * (1 - std::pow(0.6826894921370859, 2))), 4 * r.gap.std_error);
  EXPECT_EQ(r.verdict, Verdict::confirmed);
}

TEST(Corollary, AsymmetricBodyIsInapplicable) {
  const auto r = verify_corollary(ConvexBody::simplex(2), Matrix::Identity(2, 2), quick(20000), 14);
  EXPECT_EQ(r.verdict, Verdict::inapplicable_hypothesis);
}
