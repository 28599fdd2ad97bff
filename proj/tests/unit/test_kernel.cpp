#include "gci/mc_kernel.hpp"
#include "gci/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace gci;

namespace {

Moments run(Execution exec, std::size_t n) {
  return accumulate(
      Measure(gaussian(2)), {21, n}, 3,
      [](const Point& x, std::span<double> out) {
        out[0] = x[0];
        out[1] = x[0] * x[1];
        out[2] = x.squaredNorm();
      },
      exec);
}

}  // namespace

TEST(Moments, MatchesTwoPassFormulas) {
  const std::vector<std::vector<double>> data = {{1, 2}, {2, 1}, {4, 5}, {-1, 0}, {3, 3}};
  Moments m(2);
  for (const auto& row : data) m.add(row);
  EXPECT_DOUBLE_EQ(m.mean(0), 1.8);
  EXPECT_DOUBLE_EQ(m.mean(1), 2.2);
  // Sample variance and covariance with n - 1.
  EXPECT_NEAR(m.variance(0), 3.7, 1e-12);
  EXPECT_NEAR(m.covariance(0, 1), 3.3, 1e-12);
  EXPECT_NEAR(m.std_error(0), std::sqrt(3.7 / 5), 1e-12);
}

TEST(Moments, MergeEqualsSinglePass) {
  Moments whole(2);
  Moments left(2);
  Moments right(2);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> row = {std::sin(i), std::cos(0.3 * i)};
    whole.add(row);
    (i < 37 ? left : right).add(row);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), whole.count());
  EXPECT_NEAR(left.mean(0), whole.mean(0), 1e-15);
  EXPECT_NEAR(left.covariance(0, 1), whole.covariance(0, 1), 1e-14);
}

TEST(Moments, GroupsLimitCovariances) {
  Moments m(3, {{0, 1}, {2}});
  m.add(std::vector<double>{1, 2, 3});
  m.add(std::vector<double>{2, 3, 5});
  EXPECT_NO_THROW(m.covariance(0, 1));
  EXPECT_THROW(m.covariance(0, 2), std::invalid_argument);
}

TEST(Gap, DeltaMethodOnIndependentIndicators) {
  // joint = a * b with a, b independent fair coins: gap 0.
  Moments m(3);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m.add(std::vector<double>{double(a * b), double(a), double(b)});
  const GapEstimate g = covariance_gap(m, 0, 1, 2);
  EXPECT_NEAR(g.value, 0.0, 1e-15);
  EXPECT_GT(g.std_error, 0.0);
}

TEST(Kernel, SerialAndParallelAreBitIdentical) {
  const std::size_t n = 5 * kBlockSize + 123;
  const Moments s = run(Execution::serial, n);
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    const Moments p = run(Execution::parallel, n);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(s.mean(i), p.mean(i));
      EXPECT_EQ(s.std_error(i), p.std_error(i));
    }
  }
  EXPECT_NEAR(s.mean(2), 2.0, 0.05);
}

TEST(Kernel, ZeroSamplesThrow) { EXPECT_THROW(run(Execution::serial, 0), std::invalid_argument); }

TEST(Kernel, ObserverExceptionsPropagate) {
  EXPECT_THROW(accumulate(
                   Measure(gaussian(1)), {1, 3 * kBlockSize}, 1,
                   [](const Point& x, std::span<double> out) {
                     if (x[0] > 3.0) throw std::runtime_error("tail");
                     out[0] = x[0];
                   },
                   Execution::parallel),
               std::runtime_error);
}

TEST(Report, VerdictRule) {
  EXPECT_EQ(classify({0.0, 0.1}, true), Verdict::confirmed);
  EXPECT_EQ(classify({-0.4, 0.1}, true), Verdict::inconclusive);
  EXPECT_EQ(classify({-0.6, 0.1}, true), Verdict::violated);
  EXPECT_EQ(classify({0.3, 0.1}, false), Verdict::inapplicable_hypothesis);
  // A zero standard error leaves room for rounding.
  EXPECT_EQ(classify({-1e-13, 0.0}, true), Verdict::inconclusive);
  EXPECT_EQ(exit_code(Verdict::confirmed), 0);
  EXPECT_EQ(exit_code(Verdict::inconclusive), 0);
  EXPECT_EQ(exit_code(Verdict::violated), 1);
  EXPECT_EQ(exit_code(Verdict::inapplicable_hypothesis), 2);
}

TEST(Report, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Report, SerializationIsStableAndHandlesNonFinite) {
  VerificationReport r;
  r.theorem = "1.1";
  r.lhs = {"lhs", 0.5, 0.01, "mc"};
  r.rhs = {"rhs", std::numeric_limits<double>::quiet_NaN(), 0.0, "mc"};
  r.gap = {0.1, 0.01};
  r.decide();
  const std::string a = serialize(r);
  EXPECT_EQ(a, serialize(r));
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["verdict"], "confirmed");
  EXPECT_EQ(j["rhs"]["value"], "nan");
  EXPECT_EQ(j["provenance"]["version"], kVersion);
}
