#include "gci/search.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace gci;

namespace {

Budgets quick(std::size_t n = 50000) {
  Budgets b;
  b.samples = n;
  return b;
}

}  // namespace

TEST(RandomInstance, PolytopeContainsOrigin) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto inst = random_instance({2, BodyKind::polytope, MeasureKind::gaussian, true, false}, s);
    EXPECT_TRUE(contains_origin(inst.a));
    EXPECT_EQ(inst.a.kind(), "hpolytope");
    EXPECT_GT(inst.ball_radius, 0.0);
  }
}

TEST(RandomInstance, ShiftedPolytopeExcludesOrigin) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto inst = random_instance({3, BodyKind::polytope, MeasureKind::gaussian, false, false}, s);
    EXPECT_FALSE(contains_origin(inst.a));
    EXPECT_NO_THROW(sample_in_body(inst.a, 10, s, 1e-5));
  }
}

TEST(RandomInstance, EllipsoidIsCentred) {
  const auto inst = random_instance({3, BodyKind::ellipsoid, MeasureKind::radial_grid, true, false}, 4);
  EXPECT_EQ(inst.a.kind(), "quadratic_ellipsoid");
  EXPECT_TRUE(contains_origin(inst.a));
  EXPECT_TRUE(is_symmetric(inst.a, 500, 1).passed);
}

TEST(RandomInstance, ProjectionClosedFamily) {
  for (std::size_t d : {2, 3}) {
    const auto inst = random_instance({d, BodyKind::projection_closed, MeasureKind::product, true, true}, 9);
    EXPECT_TRUE(is_projection_closed(inst.a, 2000, 3).passed);
    EXPECT_EQ(inst.b.kind(), "ellipsoid");
    EXPECT_TRUE(std::holds_alternative<ProductDensity>(inst.measure));
  }
}

TEST(RandomInstance, SameSeedSameInstance) {
  const InstanceSpec spec{5, BodyKind::polytope, MeasureKind::radial_grid, true, false};
  const auto a = random_instance(spec, 31);
  const auto b = random_instance(spec, 31);
  const auto c = random_instance(spec, 32);
  EXPECT_EQ(a.descriptor, b.descriptor);
  EXPECT_EQ(a.ball_radius, b.ball_radius);
  EXPECT_NE(a.descriptor, c.descriptor);
}

TEST(RandomInstance, InfeasibleSpecsThrow) {
  EXPECT_THROW(random_instance({2, BodyKind::ellipsoid, MeasureKind::gaussian, false, false}, 1), std::invalid_argument);
  EXPECT_THROW(random_instance({0, BodyKind::polytope, MeasureKind::gaussian, true, false}, 1), std::invalid_argument);
}

TEST(Batch, TheoremOneOneHasNoViolations) {
  const auto r = batch_verify("1.1", 20, {2}, quick(), 5);
  EXPECT_EQ(r.rows.size(), 20u);
  EXPECT_EQ(r.violated, 0u);
  EXPECT_EQ(r.inapplicable, 0u);
}

TEST(Batch, TheoremOneTwoHasNoViolations) {
  const auto r = batch_verify("1.2", 10, {3}, quick(), 6);
  EXPECT_EQ(r.violated, 0u);
  EXPECT_EQ(r.inapplicable, 0u);
}

TEST(Batch, OtherTheoremsHaveNoViolations) {
  for (const char* t : {"2.1", "4.1", "corollary"}) {
    const auto r = batch_verify(t, 4, {1, 2}, quick(), 7);
    EXPECT_EQ(r.violated, 0u) << t;
  }
}

TEST(Batch, ZeroInstancesGiveEmptyReport) {
  const auto r = batch_verify("1.1", 0, {2}, quick(), 1);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(to_csv(r), "instance_id,theorem,d,body_descriptor_hash,gap,se,verdict,seed\n");
}

TEST(Batch, UnknownTheoremThrows) { EXPECT_THROW(batch_verify("9.9", 1, {2}, quick(), 1), std::invalid_argument); }

TEST(Batch, DeterministicCsv) {
  EXPECT_EQ(to_csv(batch_verify("1.1", 3, {1, 3}, quick(20000), 8)), to_csv(batch_verify("1.1", 3, {1, 3}, quick(20000), 8)));
}

TEST(Scan, OriginBreakFindsNegativeGaps) {
  const auto r = necessity_scan("origin-not-in-A", 30, quick(), 2);
  EXPECT_GE(count_negative(r), 1u);
  // Ranked by gap / SE.
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    EXPECT_LE(r.rows[i - 1].gap / r.rows[i - 1].se, r.rows[i].gap / r.rows[i].se);
  for (const auto& row : r.rows) EXPECT_EQ(row.verdict, Verdict::inapplicable_hypothesis);
}

TEST(Scan, BrokenMonotonicityAndTiltFindNegativeGaps) {
  EXPECT_GE(count_negative(necessity_scan("phi-not-decreasing", 5, quick(), 3)), 1u);
  EXPECT_GE(count_negative(necessity_scan("tilt-not-logconcave", 5, quick(), 3)), 1u);
}

TEST(Scan, ProjectionBreakIsFlagged) {
  const auto r = necessity_scan("A-not-projection-closed", 5, quick(20000), 4);
  EXPECT_EQ(r.inapplicable, 5u);
}

TEST(Scan, UnknownHypothesisThrows) {
  EXPECT_THROW(necessity_scan("symmetry", 1, quick(), 1), std::invalid_argument);
}
