#pragma once

#include "gci/linalg.hpp"
#include "gci/monotone_grid.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gci {

/// Iterate-change tolerance of iterative projections.
inline constexpr double kProjTol = 1e-9;
inline constexpr int kMaxDykstraSweeps = 10000;

class ConvexBody;

/// Closed Euclidean ball centred at the origin.
struct Ball {
  std::size_t dim = 0;
  double radius = 1.0;
};

/// { x : sum x_i^2 / a_i^2 <= 1 }.
struct Ellipsoid {
  std::vector<double> semi_axes;
};

/// { x : <M x, x> <= 1 } for symmetric positive definite M. The principal
/// frame is cached at construction.
struct QuadraticEllipsoid {
  Matrix matrix;
  Matrix frame;                    // columns are eigenvectors of matrix
  std::vector<double> semi_axes;   // 1 / sqrt(eigenvalue)
};

/// <normal, x> <= offset.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

struct HPolytope {
  std::vector<Halfspace> halfspaces;
  std::optional<double> radius_hint;
};

/// { x : f_1(|x_1|) + ... + f_d(|x_d|) <= 1 } with strictly increasing f_i,
/// f_i(0) = 0. Need not be convex, so only membership is offered.
struct GeneralizedBall {
  std::vector<GridFunction> components;
};

struct Intersection {
  std::vector<ConvexBody> bodies;
};

/// Immutable closed set. Copies share the underlying representation.
class ConvexBody {
 public:
  using Shape = std::variant<Ball, Ellipsoid, QuadraticEllipsoid, HPolytope, GeneralizedBall, Intersection>;

  static ConvexBody ball(std::size_t dim, double radius);
  static ConvexBody ellipsoid(std::vector<double> semi_axes);
  static ConvexBody quadratic_ellipsoid(const Matrix& matrix);
  static ConvexBody hpolytope(std::vector<Halfspace> halfspaces, std::optional<double> radius_hint = std::nullopt);
  static ConvexBody generalized_ball(std::vector<GridFunction> components);
  static ConvexBody intersection(std::vector<ConvexBody> bodies);

  /// Axis-aligned box [lo_i, hi_i] as a polytope.
  static ConvexBody box(const std::vector<double>& lo, const std::vector<double>& hi);
  /// { x_i >= 0, sum x_i <= 1 }.
  static ConvexBody simplex(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Shape& shape() const { return *shape_; }
  std::string kind() const;

 private:
  ConvexBody(Shape shape, std::size_t dim);

  std::shared_ptr<const Shape> shape_;
  std::size_t dim_ = 0;
};

/// Raised when an iterative projection does not settle.
class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, Point last_iterate, double residual)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), residual_(residual) {}
  const Point& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Point last_iterate_;
  double residual_;
};

class UnboundedBodyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-set membership, no tolerance.
bool contains(const ConvexBody& body, const Point& x);

/// Nearest point of the body; x itself when x is inside.
Point project(const ConvexBody& body, const Point& x);

double distance(const ConvexBody& body, const Point& x);

/// Cheap value never exceeding distance(body, x). Exact for balls and
/// ellipsoids; for polytopes the largest normalised halfspace violation.
double distance_lower_bound(const ConvexBody& body, const Point& x);

/// R with body inside Ball{R}. May overestimate, never underestimates.
double bounding_radius(const ConvexBody& body);

bool contains_origin(const ConvexBody& body);

/// Axis-aligned box containing the body.
struct AxisBox {
  std::vector<double> lo;
  std::vector<double> hi;
};
AxisBox bounding_box(const ConvexBody& body);

/// Result of a probabilistic property check. Passing is evidence, failing is
/// a disproof carried by the witness.
struct CheckReport {
  std::string name;
  bool passed = true;
  std::size_t samples = 0;
  std::optional<Point> witness;
  std::optional<Point> image;
  std::string detail;
};

/// Uniform points of the body by rejection from its bounding ball.
std::vector<Point> sample_in_body(const ConvexBody& body, std::size_t n, std::uint64_t seed,
                                  double min_acceptance = 1e-3);

/// x in A implies x with any single coordinate zeroed is in A.
CheckReport is_projection_closed(const ConvexBody& body, std::size_t n_samples, std::uint64_t seed);

/// x in A implies -x in A.
CheckReport is_symmetric(const ConvexBody& body, std::size_t n_samples, std::uint64_t seed);

}  // namespace gci
