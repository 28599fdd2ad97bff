#include "gci/convex_body.hpp"

#include "gci/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace gci {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Nearest point of the axis-aligned ellipsoid to an exterior point. The
// multiplier solves sum a_i^2 x_i^2 / (a_i^2 + lambda)^2 = 1.
Point project_axis_ellipsoid(const std::vector<double>& a, const Point& x) {
  const std::size_t d = a.size();
  double level = 0.0;
  for (std::size_t i = 0; i < d; ++i) level += x[i] * x[i] / (a[i] * a[i]);
  if (level <= 1.0) return x;
  auto secular = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double r = a[i] * x[i] / (a[i] * a[i] + lambda);
      s += r * r;
    }
    return s - 1.0;
  };
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < d; ++i) hi += a[i] * a[i] * x[i] * x[i];
  hi = std::sqrt(hi);
  for (int it = 0; it < 400 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (secular(mid) > 0.0) lo = mid; else hi = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  Point y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = a[i] * a[i] * x[i] / (a[i] * a[i] + lambda);
  return y;
}

Point project_halfspace(const Halfspace& h, const Point& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - (excess / h.normal.squaredNorm()) * h.normal;
}

bool polytope_contains(const HPolytope& p, const Point& x, double slack = 0.0) {
  for (const auto& h : p.halfspaces)
    if (h.normal.dot(x) > h.offset + slack * h.normal.norm()) return false;
  return true;
}

using Projector = std::function<Point(const Point&)>;

// Dykstra's alternating projections onto an intersection of closed convex sets.
Point dykstra(const std::vector<Projector>& projectors, const Point& start) {
  const std::size_t m = projectors.size();
  std::vector<Point> increments(m, Point::Zero(start.size()));
  Point x = start;
  double change = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kMaxDykstraSweeps; ++sweep) {
    const Point before = x;
    for (std::size_t i = 0; i < m; ++i) {
      const Point shifted = x + increments[i];
      const Point y = projectors[i](shifted);
      increments[i] = shifted - y;
      x = y;
    }
    change = (x - before).norm();
    if (change < kProjTol) return x;
  }
  throw ProjectionError("Dykstra projection did not converge (empty set or slow geometry)", x, change);
}

// Lawson-Hanson active set for min |E u - f| subject to u >= 0.
Eigen::VectorXd nnls(const Matrix& e, const Eigen::VectorXd& f) {
  const Eigen::Index m = e.cols();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  std::vector<bool> passive(static_cast<std::size_t>(m), false);
  const double tol = 1e-12 * std::max(1.0, e.cwiseAbs().maxCoeff()) * std::max(1.0, f.norm());
  const auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < m; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Matrix sub(e.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = e.col(idx[k]);
    const Eigen::VectorXd sol = sub.colPivHouseholderQr().solve(f);
    z.setZero();
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = sol[static_cast<Eigen::Index>(k)];
  };
  Eigen::VectorXd z(m);
  for (Eigen::Index outer = 0; outer < 3 * m + 10; ++outer) {
    const Eigen::VectorXd w = e.transpose() * (f - e * u);
    Eigen::Index t = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < m; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best) {
        best = w[j];
        t = j;
      }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;
    for (Eigen::Index inner = 0; inner < 3 * m + 10; ++inner) {
      solve_passive(z);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, u[j] / (u[j] - z[j]));
        }
      if (feasible) {
        u = z;
        break;
      }
      u += alpha * (z - u);
      for (Eigen::Index j = 0; j < m; ++j)
        if (passive[static_cast<std::size_t>(j)] && u[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          u[j] = 0.0;
        }
    }
  }
  return u;
}

// Nearest point as a least-distance program: min |z| with N (x + z) <= b,
// reduced to nonnegative least squares.
Point project_polytope_ldp(const HPolytope& p, const Point& x) {
  const auto d = x.size();
  const auto m = static_cast<Eigen::Index>(p.halfspaces.size());
  Matrix e(d + 1, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& h = p.halfspaces[static_cast<std::size_t>(j)];
    const double scale = h.normal.norm();
    e.col(j).head(d) = -h.normal / scale;
    e(d, j) = (h.normal.dot(x) - h.offset) / scale;
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(d + 1);
  f[d] = 1.0;
  const Eigen::VectorXd u = nnls(e, f);
  const Eigen::VectorXd r = e * u - f;
  if (r.norm() < 1e-12 || std::abs(r[d]) < 1e-14) throw ProjectionError("polytope appears to be empty", x, 0.0);
  return x - r.head(d) / r[d];
}

Point project_polytope(const HPolytope& p, const Point& x) {
  if (polytope_contains(p, x)) return x;
  // Projecting onto the most violated face is exact when it lands inside.
  const Halfspace* worst = nullptr;
  double worst_violation = 0.0;
  for (const auto& h : p.halfspaces) {
    const double v = (h.normal.dot(x) - h.offset) / h.normal.norm();
    if (v > worst_violation) {
      worst_violation = v;
      worst = &h;
    }
  }
  const Point face = project_halfspace(*worst, x);
  if (polytope_contains(p, face, 1e-12)) return face;

  const Point y = project_polytope_ldp(p, x);
  if (!polytope_contains(p, y, 1e-7)) throw ProjectionError("polytope appears to be empty", y, (y - x).norm());
  return y;
}

// Enumerate solutions of d active constraints that satisfy the rest.
std::vector<Point> polytope_vertices(const HPolytope& p) {
  const std::size_t d = static_cast<std::size_t>(p.halfspaces.front().normal.size());
  const std::size_t m = p.halfspaces.size();
  std::vector<Point> vertices;
  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), 0);
  if (m < d) return vertices;
  while (true) {
    Matrix a(d, d);
    Point b(d);
    for (std::size_t r = 0; r < d; ++r) {
      a.row(static_cast<Eigen::Index>(r)) = p.halfspaces[pick[r]].normal.transpose();
      b[static_cast<Eigen::Index>(r)] = p.halfspaces[pick[r]].offset;
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (lu.rank() == static_cast<Eigen::Index>(d)) {
      const Point v = lu.solve(b);
      if (polytope_contains(p, v, 1e-9)) vertices.push_back(v);
    }
    // next combination
    std::size_t k = d;
    while (k > 0 && pick[k - 1] == m - d + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vertices;
}

bool recession_cone_trivial(const HPolytope& p) {
  const std::size_t d = static_cast<std::size_t>(p.halfspaces.front().normal.size());
  Matrix normals(static_cast<Eigen::Index>(p.halfspaces.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i)
    normals.row(static_cast<Eigen::Index>(i)) = p.halfspaces[i].normal.normalized().transpose();
  Eigen::FullPivLU<Matrix> lu(normals);
  if (lu.rank() < static_cast<Eigen::Index>(d)) return false;  // contains a line

  // A pointed nontrivial cone has an extreme ray on d-1 active constraints.
  std::vector<Point> candidates;
  if (d == 1) {
    candidates.push_back(Point::Constant(1, 1.0));
  } else if (d == 2) {
    for (const auto& h : p.halfspaces) candidates.push_back(Point{{-h.normal[1], h.normal[0]}});
  } else {
    for (std::size_t i = 0; i < p.halfspaces.size(); ++i)
      for (std::size_t j = i + 1; j < p.halfspaces.size(); ++j) {
        const Eigen::Vector3d c = Eigen::Vector3d(p.halfspaces[i].normal).cross(Eigen::Vector3d(p.halfspaces[j].normal));
        if (c.norm() > 1e-12) candidates.emplace_back(Point(c));
      }
  }
  for (const auto& c0 : candidates) {
    for (double sign : {1.0, -1.0}) {
      const Point c = sign * c0.normalized();
      const bool in_cone = std::all_of(p.halfspaces.begin(), p.halfspaces.end(), [&](const Halfspace& h) {
        return h.normal.normalized().dot(c) <= 1e-12;
      });
      if (in_cone) return false;
    }
  }
  return true;
}

double polytope_bounding_radius(const HPolytope& p) {
  const std::size_t d = static_cast<std::size_t>(p.halfspaces.front().normal.size());
  if (d <= 3) {
    if (!recession_cone_trivial(p)) throw UnboundedBodyError("polytope is unbounded");
    const auto vertices = polytope_vertices(p);
    if (vertices.empty()) throw std::runtime_error("polytope is empty");
    double r = 0.0;
    for (const auto& v : vertices) r = std::max(r, v.norm());
    return r;
  }
  // Coordinate intervals from axis-aligned faces.
  std::vector<double> upper(d, std::numeric_limits<double>::infinity());
  std::vector<double> lower(d, std::numeric_limits<double>::infinity());
  for (const auto& h : p.halfspaces) {
    Eigen::Index axis = -1;
    int nonzero = 0;
    for (Eigen::Index i = 0; i < h.normal.size(); ++i)
      if (h.normal[i] != 0.0) {
        ++nonzero;
        axis = i;
      }
    if (nonzero != 1) continue;
    const double bound = h.offset / std::abs(h.normal[axis]);
    auto& side = h.normal[axis] > 0.0 ? upper : lower;
    side[static_cast<std::size_t>(axis)] = std::min(side[static_cast<std::size_t>(axis)], bound);
  }
  double sq = 0.0;
  bool boxed = true;
  for (std::size_t i = 0; i < d; ++i) {
    const double extent = std::max(std::abs(upper[i]), std::abs(lower[i]));
    if (!std::isfinite(extent)) {
      boxed = false;
      break;
    }
    sq += extent * extent;
  }
  if (boxed) return std::sqrt(sq);
  if (p.radius_hint) return *p.radius_hint;
  throw UnboundedBodyError("polytope in dimension > 3 needs axis-aligned bounds or a radius hint");
}

Point uniform_in_ball(RandomStream& rng, std::size_t d, double radius) {
  Point x(static_cast<Eigen::Index>(d));
  for (auto& v : x) v = rng.normal();
  const double n = x.norm();
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
  return x * (r / n);
}

}  // namespace

ConvexBody::ConvexBody(Shape shape, std::size_t dim)
    : shape_(std::make_shared<const Shape>(std::move(shape))), dim_(dim) {}

ConvexBody ConvexBody::ball(std::size_t dim, double radius) {
  if (dim == 0) throw std::invalid_argument("ball dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be positive");
  return ConvexBody(Ball{dim, radius}, dim);
}

ConvexBody ConvexBody::ellipsoid(std::vector<double> semi_axes) {
  if (semi_axes.empty()) throw std::invalid_argument("ellipsoid needs at least one semi-axis");
  for (double a : semi_axes)
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("ellipsoid semi-axes must be positive");
  const std::size_t d = semi_axes.size();
  return ConvexBody(Ellipsoid{std::move(semi_axes)}, d);
}

ConvexBody ConvexBody::quadratic_ellipsoid(const Matrix& matrix) {
  require_spd(matrix);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix);
  QuadraticEllipsoid q;
  q.matrix = matrix;
  q.frame = eig.eigenvectors();
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) q.semi_axes.push_back(1.0 / std::sqrt(eig.eigenvalues()[i]));
  const auto d = static_cast<std::size_t>(matrix.rows());
  return ConvexBody(std::move(q), d);
}

ConvexBody ConvexBody::hpolytope(std::vector<Halfspace> halfspaces, std::optional<double> radius_hint) {
  if (halfspaces.empty()) throw std::invalid_argument("polytope needs at least one halfspace");
  const auto d = static_cast<std::size_t>(halfspaces.front().normal.size());
  if (d == 0) throw std::invalid_argument("polytope dimension must be positive");
  for (const auto& h : halfspaces) {
    require_dim(h.normal, d);
    if (!(h.normal.norm() > 0.0)) throw std::invalid_argument("halfspace normal must be nonzero");
    if (!h.normal.allFinite() || !std::isfinite(h.offset)) throw std::invalid_argument("halfspace has non-finite data");
  }
  if (radius_hint && !(*radius_hint > 0.0)) throw std::invalid_argument("radius hint must be positive");
  return ConvexBody(HPolytope{std::move(halfspaces), radius_hint}, d);
}

ConvexBody ConvexBody::generalized_ball(std::vector<GridFunction> components) {
  if (components.empty()) throw std::invalid_argument("generalized ball needs at least one component");
  for (const auto& f : components) {
    if (f.front() != 0.0 || f.values().front() != 0.0)
      throw std::invalid_argument("generalized ball components must start at (0, 0)");
    if (!f.strictly_increasing()) throw std::invalid_argument("generalized ball components must be strictly increasing");
  }
  const std::size_t d = components.size();
  return ConvexBody(GeneralizedBall{std::move(components)}, d);
}

ConvexBody ConvexBody::intersection(std::vector<ConvexBody> bodies) {
  if (bodies.empty()) throw std::invalid_argument("intersection of no bodies");
  const std::size_t d = bodies.front().dim();
  for (const auto& b : bodies)
    if (b.dim() != d) throw DimensionError(d, b.dim());
  return ConvexBody(Intersection{std::move(bodies)}, d);
}

ConvexBody ConvexBody::box(const std::vector<double>& lo, const std::vector<double>& hi) {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("box bounds must have equal positive length");
  const std::size_t d = lo.size();
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("box bounds out of order");
    Point e = Point::Zero(static_cast<Eigen::Index>(d));
    e[static_cast<Eigen::Index>(i)] = 1.0;
    hs.push_back({e, hi[i]});
    hs.push_back({-e, -lo[i]});
  }
  return hpolytope(std::move(hs));
}

ConvexBody ConvexBody::simplex(std::size_t dim) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < dim; ++i) {
    Point e = Point::Zero(static_cast<Eigen::Index>(dim));
    e[static_cast<Eigen::Index>(i)] = -1.0;
    hs.push_back({e, 0.0});
  }
  hs.push_back({Point::Ones(static_cast<Eigen::Index>(dim)), 1.0});
  return hpolytope(std::move(hs));
}

std::string ConvexBody::kind() const {
  return std::visit(overloaded{
                        [](const Ball&) { return std::string("ball"); },
                        [](const Ellipsoid&) { return std::string("ellipsoid"); },
                        [](const QuadraticEllipsoid&) { return std::string("quadratic_ellipsoid"); },
                        [](const HPolytope&) { return std::string("hpolytope"); },
                        [](const GeneralizedBall&) { return std::string("generalized_ball"); },
                        [](const Intersection&) { return std::string("intersection"); },
                    },
                    *shape_);
}

bool contains(const ConvexBody& body, const Point& x) {
  require_dim(x, body.dim());
  return std::visit(overloaded{
                        [&](const Ball& b) { return x.squaredNorm() <= b.radius * b.radius; },
                        [&](const Ellipsoid& e) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < e.semi_axes.size(); ++i) {
                            const double r = x[static_cast<Eigen::Index>(i)] / e.semi_axes[i];
                            s += r * r;
                          }
                          return s <= 1.0;
                        },
                        [&](const QuadraticEllipsoid& q) { return x.dot(q.matrix * x) <= 1.0; },
                        [&](const HPolytope& p) { return polytope_contains(p, x); },
                        [&](const GeneralizedBall& g) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < g.components.size(); ++i)
                            s += g.components[i](std::abs(x[static_cast<Eigen::Index>(i)]));
                          return s <= 1.0;
                        },
                        [&](const Intersection& in) {
                          return std::all_of(in.bodies.begin(), in.bodies.end(),
                                             [&](const ConvexBody& b) { return contains(b, x); });
                        },
                    },
                    body.shape());
}

Point project(const ConvexBody& body, const Point& x) {
  require_dim(x, body.dim());
  return std::visit(overloaded{
                        [&](const Ball& b) -> Point {
                          const double n = x.norm();
                          if (n <= b.radius) return x;
                          return x * (b.radius / n);
                        },
                        [&](const Ellipsoid& e) -> Point { return project_axis_ellipsoid(e.semi_axes, x); },
                        [&](const QuadraticEllipsoid& q) -> Point {
                          if (x.dot(q.matrix * x) <= 1.0) return x;
                          const Point z = q.frame.transpose() * x;
                          return q.frame * project_axis_ellipsoid(q.semi_axes, z);
                        },
                        [&](const HPolytope& p) -> Point { return project_polytope(p, x); },
                        [&](const GeneralizedBall&) -> Point {
                          throw std::domain_error("projection onto a generalized ball is not supported (set may be non-convex)");
                        },
                        [&](const Intersection& in) -> Point {
                          if (contains(body, x)) return x;
                          std::vector<Projector> projectors;
                          for (const auto& b : in.bodies) projectors.emplace_back([&b](const Point& y) { return project(b, y); });
                          return dykstra(projectors, x);
                        },
                    },
                    body.shape());
}

double distance(const ConvexBody& body, const Point& x) {
  if (contains(body, x)) return 0.0;
  return (x - project(body, x)).norm();
}

double distance_lower_bound(const ConvexBody& body, const Point& x) {
  require_dim(x, body.dim());
  return std::visit(overloaded{
                        [&](const Ball& b) { return std::max(0.0, x.norm() - b.radius); },
                        [&](const Ellipsoid&) { return distance(body, x); },
                        [&](const QuadraticEllipsoid&) { return distance(body, x); },
                        [&](const HPolytope& p) {
                          double v = 0.0;
                          for (const auto& h : p.halfspaces) v = std::max(v, (h.normal.dot(x) - h.offset) / h.normal.norm());
                          return v;
                        },
                        [&](const GeneralizedBall&) -> double {
                          throw std::domain_error("distance to a generalized ball is not supported");
                        },
                        [&](const Intersection& in) {
                          double v = 0.0;
                          for (const auto& b : in.bodies) v = std::max(v, distance_lower_bound(b, x));
                          return v;
                        },
                    },
                    body.shape());
}

double bounding_radius(const ConvexBody& body) {
  return std::visit(overloaded{
                        [](const Ball& b) { return b.radius; },
                        [](const Ellipsoid& e) { return *std::max_element(e.semi_axes.begin(), e.semi_axes.end()); },
                        [](const QuadraticEllipsoid& q) { return *std::max_element(q.semi_axes.begin(), q.semi_axes.end()); },
                        [](const HPolytope& p) { return polytope_bounding_radius(p); },
                        [](const GeneralizedBall& g) {
                          double sq = 0.0;
                          for (const auto& f : g.components) {
                            const double r = f.inverse(1.0);
                            sq += r * r;
                          }
                          return std::sqrt(sq);
                        },
                        [](const Intersection& in) {
                          double best = std::numeric_limits<double>::infinity();
                          for (const auto& b : in.bodies) {
                            try {
                              best = std::min(best, bounding_radius(b));
                            } catch (const UnboundedBodyError&) {
                            }
                          }
                          if (!std::isfinite(best)) throw UnboundedBodyError("no bounded member in intersection");
                          return best;
                        },
                    },
                    body.shape());
}

AxisBox bounding_box(const ConvexBody& body) {
  const std::size_t d = body.dim();
  auto symmetric = [d](const std::vector<double>& half) {
    AxisBox b{std::vector<double>(d), half};
    for (std::size_t i = 0; i < d; ++i) b.lo[i] = -half[i];
    return b;
  };
  return std::visit(overloaded{
                        [&](const Ball& b) { return symmetric(std::vector<double>(d, b.radius)); },
                        [&](const Ellipsoid& e) { return symmetric(e.semi_axes); },
                        [&](const QuadraticEllipsoid& q) {
                          const Matrix inv = q.matrix.inverse();
                          std::vector<double> half(d);
                          for (std::size_t i = 0; i < d; ++i) half[i] = std::sqrt(inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
                          return symmetric(half);
                        },
                        [&](const HPolytope& p) {
                          if (d <= 3) {
                            (void)polytope_bounding_radius(p);
                            AxisBox b{std::vector<double>(d, std::numeric_limits<double>::infinity()),
                                      std::vector<double>(d, -std::numeric_limits<double>::infinity())};
                            for (const auto& v : polytope_vertices(p))
                              for (std::size_t i = 0; i < d; ++i) {
                                b.lo[i] = std::min(b.lo[i], v[static_cast<Eigen::Index>(i)]);
                                b.hi[i] = std::max(b.hi[i], v[static_cast<Eigen::Index>(i)]);
                              }
                            return b;
                          }
                          return symmetric(std::vector<double>(d, polytope_bounding_radius(p)));
                        },
                        [&](const GeneralizedBall& g) {
                          std::vector<double> half;
                          for (const auto& f : g.components) half.push_back(f.inverse(1.0));
                          return symmetric(half);
                        },
                        [&](const Intersection& in) {
                          AxisBox b{std::vector<double>(d, -std::numeric_limits<double>::infinity()),
                                    std::vector<double>(d, std::numeric_limits<double>::infinity())};
                          bool any = false;
                          for (const auto& m : in.bodies) {
                            try {
                              const AxisBox mb = bounding_box(m);
                              for (std::size_t i = 0; i < d; ++i) {
                                b.lo[i] = std::max(b.lo[i], mb.lo[i]);
                                b.hi[i] = std::min(b.hi[i], mb.hi[i]);
                              }
                              any = true;
                            } catch (const UnboundedBodyError&) {
                            }
                          }
                          if (!any) throw UnboundedBodyError("no bounded member in intersection");
                          return b;
                        },
                    },
                    body.shape());
}

bool contains_origin(const ConvexBody& body) {
  return contains(body, Point::Zero(static_cast<Eigen::Index>(body.dim())));
}

std::vector<Point> sample_in_body(const ConvexBody& body, std::size_t n, std::uint64_t seed, double min_acceptance) {
  const double radius = bounding_radius(body);
  RandomStream rng(seed, 0);
  const auto max_attempts = static_cast<std::size_t>(std::ceil(static_cast<double>(std::max<std::size_t>(n, 1)) / min_acceptance));
  std::vector<Point> out;
  out.reserve(n);
  std::size_t attempts = 0;
  while (out.size() < n && attempts < max_attempts) {
    ++attempts;
    Point x = uniform_in_ball(rng, body.dim(), radius);
    if (contains(body, x)) out.push_back(std::move(x));
  }
  if (out.size() < n)
    throw SamplingError("rejection sampling accepted " + std::to_string(out.size()) + " of " + std::to_string(attempts) +
                        " proposals, below the acceptance floor; increase the sample budget or tighten the bounding radius");
  return out;
}

CheckReport is_projection_closed(const ConvexBody& body, std::size_t n_samples, std::uint64_t seed) {
  CheckReport report{"projection_closed", true, n_samples, std::nullopt, std::nullopt, ""};
  for (const auto& x : sample_in_body(body, n_samples, seed)) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Point y = x;
      y[i] = 0.0;
      if (!contains(body, y)) {
        report.passed = false;
        report.witness = x;
        report.image = y;
        report.detail = "zeroing coordinate " + std::to_string(i) + " leaves the body";
        return report;
      }
    }
  }
  return report;
}

CheckReport is_symmetric(const ConvexBody& body, std::size_t n_samples, std::uint64_t seed) {
  CheckReport report{"symmetric", true, n_samples, std::nullopt, std::nullopt, ""};
  for (const auto& x : sample_in_body(body, n_samples, seed)) {
    if (!contains(body, -x)) {
      report.passed = false;
      report.witness = x;
      report.image = -x;
      report.detail = "reflection through the origin leaves the body";
      return report;
    }
  }
  return report;
}

}  // namespace gci
