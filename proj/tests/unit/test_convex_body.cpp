#include "gci/config.hpp"
#include "gci/convex_body.hpp"
#include "gci/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gci;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

// Thin strip along the diagonal: contains the origin, not projection-closed.
ConvexBody diagonal_strip() {
  return ConvexBody::hpolytope({{pt({1, 1}), 1.0}, {pt({-1, 0}), 1.0}, {pt({0, -1}), 1.0}, {pt({1, -1}), 0.2},
                                {pt({-1, 1}), 0.2}});
}

ConvexBody random_polytope_3d(std::uint64_t seed) {
  RandomStream rng(seed, 0);
  std::vector<Halfspace> hs;
  for (int k = 0; k < 12; ++k) {
    Point n = pt({rng.normal(), rng.normal(), rng.normal()});
    hs.push_back({n / n.norm(), 0.3 + rng.uniform()});
  }
  return ConvexBody::hpolytope(std::move(hs));
}

}  // namespace

TEST(ConvexBody, MembershipOfBasicShapes) {
  const auto ball = ConvexBody::ball(2, 1.0);
  EXPECT_TRUE(contains(ball, pt({0.6, 0.8})));
  EXPECT_FALSE(contains(ball, pt({0.6, 0.81})));

  const auto box = ConvexBody::box({-1, 0}, {2, 1});
  EXPECT_TRUE(contains(box, pt({2, 1})));
  EXPECT_FALSE(contains(box, pt({0, -0.01})));

  const auto ell = ConvexBody::ellipsoid({2.0, 0.5});
  EXPECT_TRUE(contains(ell, pt({1.9, 0.0})));
  EXPECT_FALSE(contains(ell, pt({0.0, 0.6})));

  const auto simplex = ConvexBody::simplex(3);
  EXPECT_TRUE(contains(simplex, pt({0.2, 0.3, 0.4})));
  EXPECT_FALSE(contains(simplex, pt({0.5, 0.3, 0.4})));
  EXPECT_FALSE(contains(simplex, pt({-0.1, 0.3, 0.4})));
}

TEST(ConvexBody, GeneralizedBallWithQuadraticComponentsIsTheUnitBall) {
  const auto g = ConvexBody::generalized_ball({power_component(2.0, 1.0), power_component(2.0, 1.0)});
  const auto ball = ConvexBody::ball(2, 1.0);
  RandomStream rng(3, 0);
  for (int i = 0; i < 2000; ++i) {
    const Point x = pt({2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2});
    if (std::abs(x.norm() - 1.0) < 1e-6) continue;
    EXPECT_EQ(contains(g, x), contains(ball, x)) << x.transpose();
  }
}

TEST(ConvexBody, ProjectionOntoSquare) {
  const auto sq = ConvexBody::box({-1, -1}, {1, 1});
  EXPECT_LT((project(sq, pt({3, 2})) - pt({1, 1})).norm(), 1e-9);
  EXPECT_LT((project(sq, pt({0.5, 5})) - pt({0.5, 1})).norm(), 1e-9);
  EXPECT_NEAR(distance(sq, pt({3, 1})), 2.0, 1e-9);
  EXPECT_EQ(distance(sq, pt({0.2, 0.3})), 0.0);
}

TEST(ConvexBody, ProjectionOntoEllipsoidSatisfiesNormalCondition) {
  const auto ell = ConvexBody::ellipsoid({2.0, 0.5});
  const Point x = pt({3.0, 2.0});
  const Point y = project(ell, x);
  // Boundary point whose outward normal is parallel to x - y.
  EXPECT_NEAR(y[0] * y[0] / 4.0 + y[1] * y[1] / 0.25, 1.0, 1e-9);
  const Point normal = pt({y[0] / 4.0, y[1] / 0.25});
  const Point r = x - y;
  EXPECT_NEAR(normal[0] * r[1] - normal[1] * r[0], 0.0, 1e-8);
}

// Variational inequality: <x - P x, z - P x> <= 0 for every z in the body.
TEST(ConvexBody, PolytopeProjectionIsNearestPoint) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto p = random_polytope_3d(seed);
    const auto inside = sample_in_body(p, 400, seed);
    RandomStream rng(seed, 9);
    for (int k = 0; k < 20; ++k) {
      const Point x = 3.0 * pt({rng.normal(), rng.normal(), rng.normal()});
      const Point y = project(p, x);
      EXPECT_TRUE(contains(p, y + 1e-9 * (Point::Zero(3) - y)));
      for (const auto& z : inside) EXPECT_LE((x - y).dot(z - y), 1e-8);
      EXPECT_LE(distance_lower_bound(p, x), distance(p, x) + 1e-12);
    }
  }
}

TEST(ConvexBody, ProjectionIsIdempotent) {
  const auto p = random_polytope_3d(11);
  const Point x = pt({4, -3, 2});
  const Point y = project(p, x);
  EXPECT_LT((project(p, y) - y).norm(), 1e-9);
}

TEST(ConvexBody, EmptyPolytopeIsReported) {
  const auto empty = ConvexBody::hpolytope({{pt({1.0}), -1.0}, {pt({-1.0}), -1.0}}, 5.0);
  EXPECT_THROW(project(empty, pt({0.0})), ProjectionError);
}

TEST(ConvexBody, OriginAndBounds) {
  EXPECT_FALSE(contains_origin(ConvexBody::box({2}, {3})));
  EXPECT_TRUE(contains_origin(ConvexBody::simplex(4)));
  EXPECT_NEAR(bounding_radius(ConvexBody::simplex(3)), 1.0, 1e-9);
  const AxisBox box = bounding_box(ConvexBody::box({-1, 0.5}, {2, 3}));
  EXPECT_DOUBLE_EQ(box.lo[0], -1.0);
  EXPECT_DOUBLE_EQ(box.hi[1], 3.0);
}

TEST(ConvexBody, ProjectionClosure) {
  EXPECT_TRUE(is_projection_closed(ConvexBody::simplex(3), 2000, 1).passed);
  EXPECT_TRUE(is_projection_closed(ConvexBody::ellipsoid({1.0, 2.0, 0.5}), 2000, 1).passed);
  const CheckReport strip = is_projection_closed(diagonal_strip(), 2000, 1);
  EXPECT_FALSE(strip.passed);
  ASSERT_TRUE(strip.witness && strip.image);
  EXPECT_TRUE(contains(diagonal_strip(), *strip.witness));
  EXPECT_FALSE(contains(diagonal_strip(), *strip.image));
}

TEST(ConvexBody, Symmetry) {
  EXPECT_TRUE(is_symmetric(ConvexBody::ball(3, 1.5), 1000, 2).passed);
  EXPECT_FALSE(is_symmetric(ConvexBody::simplex(2), 1000, 2).passed);
}

TEST(ConvexBody, DimensionMismatchIsRejected) {
  EXPECT_THROW(ConvexBody::box({0, 0}, {1}), std::invalid_argument);
}
