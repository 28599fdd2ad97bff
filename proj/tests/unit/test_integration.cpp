#include "gci/integration.hpp"
#include "gci/mc_kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gci;

namespace {

const double kDisk = 1.0 - std::exp(-0.5);  // gamma_2(Ball{1})

}  // namespace

TEST(Integration, GaussLegendreRules) {
  for (std::size_t n : {8, 16, 32, 64}) {
    const auto& q = gauss_legendre_unit(n);
    double w = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      w += q.weights[i];
      m += q.weights[i] * std::pow(q.nodes[i], 9);
    }
    EXPECT_NEAR(w, 1.0, 1e-14);
    EXPECT_NEAR(m, 0.1, 1e-14);
  }
  EXPECT_THROW(gauss_legendre_unit(7), std::invalid_argument);
}

TEST(Integration, MonteCarloDiskWithinFourSigma) {
  const auto est = mc_integral(gaussian(2), indicator_field(ConvexBody::ball(2, 1.0)), 200000, 17);
  EXPECT_LE(std::abs(est.value - kDisk), 4.0 * est.std_error);
  EXPECT_NEAR(est.std_error, std::sqrt(kDisk * (1 - kDisk) / 200000.0), 2e-5);
}

TEST(Integration, SlicedQuadratureOfDiskAndInterval) {
  EXPECT_NEAR(sliced_measure(gaussian_product(2), ConvexBody::ball(2, 1.0)).value, kDisk, 1e-6);
  EXPECT_NEAR(sliced_measure(gaussian_product(1), ConvexBody::ball(1, 1.0)).value, 0.6826894921370859, 1e-6);
  // Ellipsoid with semi-axes (1, 1) is the same disk.
  EXPECT_NEAR(sliced_measure(gaussian_product(2), ConvexBody::ellipsoid({1.0, 1.0})).value, kDisk, 1e-6);
}

TEST(Integration, RadialIntegralOfConstantIsBallMass) {
  const auto mu = gaussian(2);
  for (double t : {0.5, 1.0, 2.0}) EXPECT_NEAR(radial_integral(constant_field(2, 1.0), mu, t, 64).value, mu.ball_mass(t), 1e-9);
}

// int_{B_t} e^{-|x|^2/2} d gamma_2 = (1 - e^{-t^2}) / 2.
TEST(Integration, RadialCumulativeClosedForm) {
  const auto f = gaussian_bump(2, 0.5);
  const std::vector<double> t = {0.0, 0.5, 1.0, 1.5, 3.0};
  const auto v = radial_cumulative(f, gaussian(2), t, 64);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(v[i], 0.5 * (1 - std::exp(-t[i] * t[i])), 1e-9);
}

TEST(Integration, GridOracleAgreesWithClosedForm) {
  const auto est = grid_oracle_2d(gaussian(2), gaussian_bump(2, 0.5), 800);
  EXPECT_NEAR(est.value, 0.5, 1e-5);
  const auto disk = grid_oracle_2d(gaussian(2), indicator_field(ConvexBody::ball(2, 1.0)), 2000);
  EXPECT_NEAR(disk.value, kDisk, 2e-4);
}

TEST(Integration, SphereAverageOfCoordinateSquare) {
  const auto f = custom_field(2, [](const Point& x) { return x[0] * x[0]; }, "x1^2");
  EXPECT_NEAR(sphere_average(f, 1.5, 64, 1).value, 1.5 * 1.5 / 2.0, 1e-12);
}

// Phi'(t) = t e^{-t^2/2} (e^{-t^2/2} - 1/2) for f = e^{-|x|^2/2} under gamma_2.
TEST(Integration, PhiDerivativeClosedForm) {
  const auto f = gaussian_bump(2, 0.5);
  for (double t : {0.5, 1.0, 1.1774100225154747, 2.0}) {
    const double expected = t * std::exp(-t * t / 2) * (std::exp(-t * t / 2) - 0.5);
    EXPECT_NEAR(phi_derivative(f, gaussian(2), t, 64, 0.5, 1).value, expected, 1e-9);
  }
}

TEST(Integration, CorrelationGapForNestedSets) {
  // Disk inside the square: gap = mu(B) (1 - mu(A)).
  const auto a = ConvexBody::box({-1, -1}, {1, 1});
  const auto b = ConvexBody::ball(2, 1.0);
  const auto est = mc_joint(gaussian(2), a, b, 200000, 3);
  const double sq = std::pow(0.6826894921370859, 2);
  EXPECT_LE(std::abs(est.gap.value - kDisk * (1 - sq)), 4.0 * est.gap.std_error);
}

TEST(Integration, SerialAndParallelAgreeBitForBit) {
  const auto f = gaussian_bump(3, 0.7);
  const auto g = indicator_field(ConvexBody::simplex(3));
  const auto s = mc_correlation(gaussian(3), f, g, 100000, 9, Execution::serial);
  const auto p = mc_correlation(gaussian(3), f, g, 100000, 9, Execution::parallel);
  EXPECT_EQ(s.gap.value, p.gap.value);
  EXPECT_EQ(s.gap.std_error, p.gap.std_error);
  EXPECT_EQ(s.first.value, p.first.value);
}
