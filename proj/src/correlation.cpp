#include "gci/correlation.hpp"

#include "gci/mc_kernel.hpp"
#include "gci/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gci {

namespace {

// Absolute slack for checks on computed field values. f_n goes through
// iterative projections that settle to kProjTol.
constexpr double kFieldTol = 1e-7;

// Substream ids for hypothesis checks, far above any Monte Carlo block index.
constexpr std::uint64_t kCheckStream = 1ULL << 40;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Point unit_direction(RandomStream& rng, std::size_t d) {
  Point u(static_cast<Eigen::Index>(d));
  double sq = 0.0;
  do {
    for (auto& v : u) v = rng.normal();
    sq = u.squaredNorm();
  } while (sq == 0.0);
  return u / std::sqrt(sq);
}

Point uniform_in_ball(RandomStream& rng, std::size_t d, double radius) {
  const Point u = unit_direction(rng, d);
  return u * (radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)));
}

double check_radius(const ScalarField& field, const Measure& measure) {
  if (field.support_radius) return *field.support_radius;
  return truncation_radius(measure);
}

double axis_half_width(const ScalarField& field, const Measure& measure, std::size_t axis) {
  if (field.support_box) return std::max(std::abs(field.support_box->lo[axis]), std::abs(field.support_box->hi[axis]));
  if (field.support_radius) return *field.support_radius;
  return truncation_half_width(measure);
}

void require_field_dim(const ScalarField& field, const Measure& measure) {
  const auto d = static_cast<std::size_t>(dim(measure));
  if (field.dim != d) throw DimensionError(d, field.dim);
}

CheckReport passed_check(std::string name, std::string detail) {
  CheckReport c;
  c.name = std::move(name);
  c.detail = std::move(detail);
  return c;
}

CheckReport failed_check(std::string name, std::string detail) {
  CheckReport c = passed_check(std::move(name), std::move(detail));
  c.passed = false;
  return c;
}

CheckReport bounded_check(const ConvexBody& a) {
  try {
    const double r = bounding_radius(a);
    return passed_check("bounded", "bounding radius " + fmt(r));
  } catch (const UnboundedBodyError& e) {
    return failed_check("bounded", e.what());
  }
}

CheckReport convex_check(const ConvexBody& a) {
  if (a.kind() == "generalized_ball") return failed_check("convex", "generalized balls are not certified convex");
  return passed_check("convex", "by construction (" + a.kind() + ")");
}

CheckReport separable_check(const ConvexBody& b) {
  const std::string k = b.kind();
  if (k == "ball" || k == "ellipsoid" || k == "generalized_ball") return passed_check("B_separable", k);
  return failed_check("B_separable", "B must be a ball, an axis-aligned ellipsoid or a generalized ball, got " + k);
}

NamedValue product_value(std::string name, const MeasureEstimate& a, const MeasureEstimate& b) {
  return {std::move(name), a.value * b.value,
          std::sqrt(b.value * b.value * a.std_error * a.std_error + a.value * a.value * b.std_error * b.std_error), "mc"};
}

void fill_from_joint(VerificationReport& r, const JointEstimate& est, const std::string& lhs_name,
                     const std::string& rhs_name) {
  r.lhs = {lhs_name, est.joint.value, est.joint.std_error, "mc"};
  r.rhs = product_value(rhs_name, est.first, est.second);
  r.gap = est.gap;
  r.details.push_back({"first_marginal", est.first.value, est.first.std_error, "mc"});
  r.details.push_back({"second_marginal", est.second.value, est.second.std_error, "mc"});
}

struct ClassBudget {
  std::size_t rays;
  std::size_t levels;
  std::size_t mc;
};

ClassBudget class_budget(const Budgets& b) {
  return {std::max<std::size_t>(8, b.hypothesis_samples / 16), 16, std::max<std::size_t>(10000, 10 * b.hypothesis_samples)};
}

std::vector<CheckReport> prefixed(std::vector<CheckReport> checks, const std::string& prefix) {
  for (auto& c : checks) c.name = prefix + c.name;
  return checks;
}

}  // namespace

FnApproximant::FnApproximant(ConvexBody body, int n) : body_(std::move(body)), n_(n) {
  if (n < 1) throw std::invalid_argument("approximant index must be positive");
}

double FnApproximant::from_distance(double dist, int n) {
  if (dist <= 0.0) return 1.0;
  const double v = 1.0 - static_cast<double>(n) * dist;
  return v > 0.0 ? v : 0.0;
}

double FnApproximant::operator()(const Point& x) const {
  const double reach = 1.0 / static_cast<double>(n_);
  if (distance_lower_bound(body_, x) >= reach) return 0.0;
  return from_distance(distance(body_, x), n_);
}

ScalarField fn_field(const ConvexBody& body, int n) {
  const FnApproximant approx(body, n);
  ScalarField f;
  f.dim = body.dim();
  f.kind = ScalarField::Kind::fn_approximant;
  f.eval = [approx](const Point& x) { return approx(x); };
  const double reach = 1.0 / static_cast<double>(n);
  try {
    f.support_radius = bounding_radius(body) + reach;
    AxisBox box = bounding_box(body);
    for (auto& v : box.lo) v -= reach;
    for (auto& v : box.hi) v += reach;
    f.support_box = box;
  } catch (const UnboundedBodyError&) {
  }
  if (const auto* ball = std::get_if<Ball>(&body.shape())) {
    const double r = ball->radius;
    f.radial = [r, n](double t) { return FnApproximant::from_distance(std::max(0.0, t - r), n); };
  }
  f.description = "f_" + std::to_string(n) + "(" + body.kind() + ")";
  return f;
}

bool all_passed(const std::vector<CheckReport>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed; });
}

std::vector<CheckReport> check_class_Cd(const ScalarField& field, const Measure& measure, std::size_t n_rays,
                                        std::size_t n_levels, std::uint64_t seed, std::size_t mc_samples) {
  require_field_dim(field, measure);
  const std::size_t d = field.dim;
  n_rays = std::max<std::size_t>(n_rays, 1);
  n_levels = std::max<std::size_t>(n_levels, 1);
  const Point origin = Point::Zero(static_cast<Eigen::Index>(d));
  const double f0 = field(origin);
  const double radius = check_radius(field, measure);

  // Candidate points: half from the measure, half uniform on the support ball.
  const std::size_t pool_size = std::max<std::size_t>(64, n_rays * n_levels);
  std::vector<Point> pool;
  std::vector<double> values;
  pool.reserve(pool_size);
  {
    RandomStream from_measure(seed, kCheckStream + 1);
    RandomStream from_ball(seed, kCheckStream + 2);
    Point x(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < pool_size; ++i) {
      if (i % 2 == 0) {
        draw(measure, from_measure, x);
        pool.push_back(x);
      } else {
        pool.push_back(uniform_in_ball(from_ball, d, radius));
      }
      values.push_back(field(pool.back()));
    }
  }

  std::vector<CheckReport> out;

  CheckReport top = passed_check("max_at_origin", "");
  top.samples = pool.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (values[i] > f0 + kFieldTol) {
      top.passed = false;
      top.witness = pool[i];
      top.detail = "f(x)=" + fmt(values[i]) + " exceeds f(0)=" + fmt(f0);
      break;
    }
  }
  out.push_back(top);

  CheckReport convex = passed_check("superlevel_convexity", "");
  {
    RandomStream rng(seed, kCheckStream + 3);
    const double top_value = std::max(f0, *std::max_element(values.begin(), values.end()));
    std::vector<std::size_t> members;
    for (std::size_t k = 1; k <= n_levels && convex.passed && top_value > 0.0; ++k) {
      const double c = top_value * static_cast<double>(k) / static_cast<double>(n_levels + 1);
      members.clear();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (values[i] > c) members.push_back(i);
      if (members.size() < 2) continue;
      for (std::size_t p = 0; p < n_rays; ++p) {
        const std::size_t i = members[static_cast<std::size_t>(rng.uniform() * static_cast<double>(members.size()))];
        const std::size_t j = members[static_cast<std::size_t>(rng.uniform() * static_cast<double>(members.size()))];
        const double lambda = rng.uniform();
        const Point z = lambda * pool[i] + (1.0 - lambda) * pool[j];
        const double fz = field(z);
        ++convex.samples;
        if (fz <= c - kFieldTol) {
          convex.passed = false;
          convex.witness = pool[i];
          convex.image = pool[j];
          convex.detail = "level " + fmt(c) + ": f at lambda=" + fmt(lambda) + " is " + fmt(fz);
          break;
        }
      }
    }
  }
  out.push_back(convex);

  CheckReport rays = passed_check("ray_monotonicity", "");
  {
    RandomStream rng(seed, kCheckStream + 4);
    const std::size_t steps = 8 * n_levels;
    for (std::size_t r = 0; r < n_rays && rays.passed; ++r) {
      const Point u = unit_direction(rng, d);
      double previous = f0;
      for (std::size_t k = 1; k <= steps; ++k) {
        const Point x = u * (radius * static_cast<double>(k) / static_cast<double>(steps));
        const double v = field(x);
        ++rays.samples;
        if (v > previous + kFieldTol) {
          rays.passed = false;
          rays.witness = x;
          rays.detail = "f increases along the ray from " + fmt(previous) + " to " + fmt(v);
          break;
        }
        previous = v;
      }
    }
  }
  out.push_back(rays);

  const MeasureEstimate mu = mc_integral(measure, field, mc_samples, seed ^ 0x2545f4914f6cdd1dULL);
  CheckReport peak = passed_check("origin_exceeds_mean", "f(0)=" + fmt(f0) + " mu(f)=" + fmt(mu.value) + " se=" + fmt(mu.std_error));
  peak.samples = mc_samples;
  peak.passed = f0 > mu.value - 3.0 * mu.std_error;
  out.push_back(peak);
  return out;
}

std::vector<CheckReport> check_class_Cbar_d(const ScalarField& field, const Measure& measure, std::size_t n_lines,
                                            std::size_t n_levels, std::uint64_t seed) {
  require_field_dim(field, measure);
  const std::size_t d = field.dim;
  const std::size_t steps = 4 * std::max<std::size_t>(n_levels, 1);
  CheckReport lines = passed_check("axis_restrictions_in_C1", "");
  RandomStream rng(seed, kCheckStream + 5);
  Point base(static_cast<Eigen::Index>(d));
  for (std::size_t l = 0; l < n_lines && lines.passed; ++l) {
    draw(measure, rng, base);
    const auto axis = std::min(d - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(d)));
    const double half = axis_half_width(field, measure, axis);
    Point y = base;
    y[static_cast<Eigen::Index>(axis)] = 0.0;
    const double foot = field(y);
    for (double side : {1.0, -1.0}) {
      double previous = foot;
      for (std::size_t k = 1; k <= steps; ++k) {
        y[static_cast<Eigen::Index>(axis)] = side * half * static_cast<double>(k) / static_cast<double>(steps);
        const double v = field(y);
        ++lines.samples;
        if (v > previous + kFieldTol) {
          lines.passed = false;
          lines.witness = y;
          lines.detail = "restriction to axis " + std::to_string(axis) + " increases away from the hyperplane: " +
                         fmt(previous) + " -> " + fmt(v);
          break;
        }
        previous = v;
      }
      if (!lines.passed) break;
    }
  }
  return {lines};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) return {};
  if (steps == 1) return {lo};
  std::vector<double> t(steps);
  for (std::size_t i = 0; i < steps; ++i)
    t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return t;
}

PhiProfile phi_profile(const ScalarField& field, const RadialDensity& measure, const std::vector<double>& t_grid,
                       std::size_t n, std::size_t m_dirs, std::uint64_t seed, Execution exec) {
  if (t_grid.empty()) throw std::invalid_argument("phi profile needs a nonempty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0)) throw std::invalid_argument("phi profile radii must be nonnegative");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("phi profile grid must be increasing");
  }
  const int d = measure.dim();
  if (field.dim != static_cast<std::size_t>(d)) throw DimensionError(static_cast<std::size_t>(d), field.dim);

  PhiProfile prof;
  prof.t = t_grid;
  const std::size_t T = t_grid.size();
  prof.phi.assign(T, 0.0);
  prof.phi_se.assign(T, 0.0);
  prof.dphi.assign(T, 0.0);
  prof.dphi_tol.assign(T, 0.0);

  const bool deterministic = d <= 2 || static_cast<bool>(field.radial);
  double mu_se = 0.0;
  std::function<double(double)> derivative;

  if (deterministic) {
    prof.method = MeasureEstimate::Method::radial_quadrature;
    const double edge = measure.truncation_radius();
    std::vector<double> points = t_grid;
    points.push_back(std::max(edge, t_grid.back()));
    const ScalarField one = constant_field(static_cast<std::size_t>(d), 1.0);
    std::vector<double> f_points = points;
    if (field.support_radius)
      for (auto& p : f_points) p = std::min(p, *field.support_radius);
    const auto f_cum = radial_cumulative(field, measure, f_points, m_dirs);
    const auto one_cum = radial_cumulative(one, measure, points, m_dirs);
    // Normalise by the quadrature's own total so that constant f gives Phi = 0.
    const double total = one_cum.back();
    prof.mu_f = f_cum.back() / total;
    for (std::size_t i = 0; i < T; ++i) prof.phi[i] = (f_cum[i] - f_cum.back() * one_cum[i] / total) / total;
    const double mu = prof.mu_f;
    derivative = [&field, &measure, m_dirs, mu, seed](double t) {
      return phi_derivative(field, measure, t, m_dirs, mu, seed).value;
    };
    for (std::size_t i = 0; i < T; ++i) {
      const double coarse = phi_derivative(field, measure, t_grid[i], m_dirs, mu, seed).value;
      const double fine = phi_derivative(field, measure, t_grid[i], 2 * m_dirs, mu, seed).value;
      prof.dphi[i] = coarse;
      prof.dphi_tol[i] = 3.0 * std::abs(fine - coarse) + 1e-12;
    }
  } else {
    prof.method = MeasureEstimate::Method::mc;
    std::vector<double> inside(T);
    for (std::size_t i = 0; i < T; ++i) inside[i] = measure.ball_mass(t_grid[i]);
    std::vector<std::vector<std::size_t>> groups(T + 1);
    for (std::size_t i = 0; i <= T; ++i) groups[i] = {i};
    const Measure mu_measure = measure;
    // Phi(t) = E[f(X) (1{|X| <= t} - mu(B_t))] with mu(B_t) from the radial table.
    const Moments m = accumulate(
        mu_measure, {seed, n}, T + 1,
        [&](const Point& x, std::span<double> out) {
          const double fx = field(x);
          const double r = x.norm();
          for (std::size_t i = 0; i < T; ++i) out[i] = fx * ((r <= t_grid[i] ? 1.0 : 0.0) - inside[i]);
          out[T] = fx;
        },
        exec, groups);
    for (std::size_t i = 0; i < T; ++i) {
      prof.phi[i] = m.mean(i);
      prof.phi_se[i] = m.std_error(i);
    }
    prof.mu_f = m.mean(T);
    mu_se = m.std_error(T);
    const double mu = prof.mu_f;
    derivative = [&field, &measure, m_dirs, mu, seed](double t) {
      return phi_derivative(field, measure, t, m_dirs, mu, seed).value;
    };
    for (std::size_t i = 0; i < T; ++i) {
      const MeasureEstimate e = phi_derivative(field, measure, t_grid[i], m_dirs, mu, seed);
      const double t = t_grid[i];
      const double factor = measure.rho(t) * std::pow(t, d - 1) * sphere_area(d);
      prof.dphi[i] = e.value;
      prof.dphi_tol[i] = 3.0 * std::hypot(e.std_error, factor * mu_se);
    }
  }

  // Significant signs of Phi' must read + ... + - ... - for a single turn.
  std::vector<std::pair<std::size_t, int>> signs;
  for (std::size_t i = 0; i < T; ++i) {
    if (prof.dphi[i] > prof.dphi_tol[i]) signs.emplace_back(i, 1);
    else if (prof.dphi[i] < -prof.dphi_tol[i]) signs.emplace_back(i, -1);
  }
  std::size_t changes = 0;
  bool rising_after_fall = false;
  for (std::size_t k = 1; k < signs.size(); ++k) {
    if (signs[k].second == signs[k - 1].second) continue;
    ++changes;
    if (signs[k].second > 0) rising_after_fall = true;
    if (!prof.t1 && signs[k - 1].second > 0) {
      double lo = t_grid[signs[k - 1].first];
      double hi = t_grid[signs[k].first];
      for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (derivative(mid) > 0.0) lo = mid; else hi = mid;
      }
      prof.t1 = 0.5 * (lo + hi);
    }
  }
  prof.unimodal = !rising_after_fall;
  std::ostringstream os;
  os << changes << " significant sign change(s) of Phi' on " << T << " radii";
  if (!prof.t1) os << "; no turning point inside the grid";
  prof.detail = os.str();
  return prof;
}

DiscreteMeasure trapezoid_measure(const std::vector<double>& t, const std::vector<double>& density) {
  if (t.size() != density.size() || t.size() < 2) throw std::invalid_argument("density grid needs matching t and values, at least two nodes");
  DiscreteMeasure nu{t, std::vector<double>(t.size(), 0.0)};
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h = t[i + 1] - t[i];
    if (!(h > 0.0)) throw std::invalid_argument("density grid must be strictly increasing");
    nu.weights[i] += 0.5 * h * density[i];
    nu.weights[i + 1] += 0.5 * h * density[i + 1];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(density[i] >= 0.0)) throw std::invalid_argument("density values must be nonnegative");
    total += nu.weights[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("density has zero mass");
  for (auto& w : nu.weights) w /= total;
  return nu;
}

namespace {

// +1 nondecreasing, -1 nonincreasing, 0 constant, 2 neither.
int direction(const std::vector<double>& v) {
  bool up = false;
  bool down = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[i - 1]) up = true;
    if (v[i] < v[i - 1]) down = true;
  }
  if (up && down) return 2;
  return up ? 1 : (down ? -1 : 0);
}

}  // namespace

FkgResult fkg_check(const DiscreteMeasure& nu, const std::vector<double>& f, const std::vector<double>& g) {
  const std::size_t n = nu.points.size();
  if (n == 0 || nu.weights.size() != n || f.size() != n || g.size() != n)
    throw std::invalid_argument("measure and functions must share a nonempty grid");
  for (std::size_t i = 1; i < n; ++i)
    if (!(nu.points[i] > nu.points[i - 1])) throw std::invalid_argument("grid points must be strictly increasing");
  const int df = direction(f);
  const int dg = direction(g);
  if (df == 2 || dg == 2 || (df != 0 && dg != 0 && df != dg))
    throw std::invalid_argument("comonotonicity required: f and g must be monotone in the same direction");
  double total = 0.0;
  for (double w : nu.weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("measure has zero mass");

  double ef = 0.0;
  double eg = 0.0;
  double efg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = nu.weights[i] / total;
    ef += w * f[i];
    eg += w * g[i];
    efg += w * f[i] * g[i];
  }
  FkgResult r;
  r.lhs = efg;
  r.rhs = ef * eg;
  r.gap = r.lhs - r.rhs;
  if (n <= kFkgDoubleSumLimit) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        s += (f[i] - f[j]) * (g[i] - g[j]) * (nu.weights[i] / total) * (nu.weights[j] / total);
    r.double_sum = s;
  }
  return r;
}

SliceProfile slice_monotonicity_check(const ProductDensity& measure, const ConvexBody& body, std::size_t axis,
                                      const std::vector<double>& x, double tol) {
  SliceProfile prof;
  prof.x = x;
  prof.report = passed_check("slice_even_and_decreasing", "");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || (i > 0 && !(x[i] > x[i - 1])))
      throw std::invalid_argument("slice grid must be nonnegative and increasing");
    prof.positive.push_back(slice_mass(measure, body, axis, x[i]));
    prof.negative.push_back(slice_mass(measure, body, axis, -x[i]));
  }
  prof.report.samples = 2 * x.size();
  Point w = Point::Zero(static_cast<Eigen::Index>(body.dim()));
  for (std::size_t i = 0; i < x.size() && prof.report.passed; ++i) {
    w[static_cast<Eigen::Index>(axis)] = x[i];
    if (std::abs(prof.positive[i] - prof.negative[i]) > tol) {
      prof.report.passed = false;
      prof.report.witness = w;
      prof.report.detail = "s(x)=" + fmt(prof.positive[i]) + " but s(-x)=" + fmt(prof.negative[i]);
    } else if (i > 0 && prof.positive[i] > prof.positive[i - 1] + tol) {
      prof.report.passed = false;
      prof.report.witness = w;
      prof.report.detail = "slice mass increases from " + fmt(prof.positive[i - 1]) + " to " + fmt(prof.positive[i]);
    }
  }
  return prof;
}

VerificationReport verify_theorem_2_1(const ScalarField& field, const RadialDensity& measure, double ball_radius,
                                      const Budgets& budgets, std::uint64_t seed) {
  if (!(ball_radius >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  const Measure mu = measure;
  require_field_dim(field, mu);
  const std::size_t d = field.dim;
  VerificationReport r;
  r.theorem = "2.1";
  r.instance = field.description + " | " + describe(mu) + " | ball r=" + fmt(ball_radius);
  const ClassBudget cb = class_budget(budgets);
  r.hypotheses = check_class_Cd(field, mu, cb.rays, cb.levels, seed, cb.mc);

  const JointEstimate est = mc_correlation(mu, field, indicator_field(ConvexBody::ball(d, ball_radius)),
                                           budgets.samples, seed, budgets.exec);
  fill_from_joint(r, est, "mu(f 1_B)", "mu(f) mu(B)");
  r.details.push_back({"ball_mass_table", measure.ball_mass(ball_radius), 0.0, "radial_quadrature"});
  r.provenance.methods = {"mc"};
  if (d <= 2 || field.radial) {
    const PhiProfile p = phi_profile(field, measure, {ball_radius}, budgets.samples, budgets.directions, seed, budgets.exec);
    r.details.push_back({"quadrature_gap", p.phi.front(), 0.0, "radial_quadrature"});
    r.provenance.methods.push_back("radial_quadrature");
  }
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

VerificationReport verify_theorem_1_1(const ConvexBody& a, const RadialDensity& measure, double ball_radius,
                                      const Budgets& budgets, std::uint64_t seed) {
  if (!(ball_radius >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  const Measure mu = measure;
  const std::size_t d = a.dim();
  if (static_cast<int>(d) != measure.dim()) throw DimensionError(static_cast<std::size_t>(measure.dim()), d);
  VerificationReport r;
  r.theorem = "1.1";
  r.instance = a.kind() + " | " + describe(mu) + " | ball r=" + fmt(ball_radius);
  CheckReport origin = passed_check("origin_in_A", "");
  origin.samples = 1;
  if (!contains_origin(a)) {
    origin.passed = false;
    origin.witness = Point::Zero(static_cast<Eigen::Index>(d));
    origin.detail = "the origin is not in A";
  }
  r.hypotheses = {origin, bounded_check(a), convex_check(a)};
  const bool route = r.hypotheses_hold() && !budgets.ladder.empty();

  std::vector<int> ladder = route ? budgets.ladder : std::vector<int>{};
  std::sort(ladder.begin(), ladder.end());
  const std::size_t L = ladder.size();
  const double reach = L > 0 ? 1.0 / static_cast<double>(ladder.front()) : 0.0;
  std::vector<std::vector<std::size_t>> groups{{0, 1, 2}};
  for (std::size_t j = 0; j < L; ++j) groups.push_back({3 + 3 * j, 4 + 3 * j, 5 + 3 * j});
  for (std::size_t j = 0; j < L; ++j) groups.push_back({3 + 3 * L + j});

  const double rr = ball_radius;
  // One distance evaluation per sample serves the whole f_n ladder.
  const Moments m = accumulate(
      mu, {seed, budgets.samples}, 3 + 4 * L,
      [&](const Point& x, std::span<double> out) {
        const double in_a = contains(a, x) ? 1.0 : 0.0;
        const double in_b = x.norm() <= rr ? 1.0 : 0.0;
        out[0] = in_a * in_b;
        out[1] = in_a;
        out[2] = in_b;
        if (L == 0) return;
        double dist = 0.0;
        if (in_a == 0.0) {
          dist = distance_lower_bound(a, x);
          if (dist < reach) dist = distance(a, x);
        }
        for (std::size_t j = 0; j < L; ++j) {
          const double fn = FnApproximant::from_distance(dist, ladder[j]);
          out[3 + 3 * j] = fn * in_b;
          out[4 + 3 * j] = fn;
          out[5 + 3 * j] = in_b;
          out[3 + 3 * L + j] = fn - in_a;
        }
      },
      budgets.exec, groups);

  JointEstimate est;
  const auto mc_est = [&](std::size_t i) {
    return MeasureEstimate{m.mean(i), m.std_error(i), budgets.samples, MeasureEstimate::Method::mc};
  };
  est.joint = mc_est(0);
  est.first = mc_est(1);
  est.second = mc_est(2);
  est.gap = covariance_gap(m, 0, 1, 2);
  fill_from_joint(r, est, "mu(A n B)", "mu(A) mu(B)");
  r.details.push_back({"ball_mass_table", measure.ball_mass(ball_radius), 0.0, "radial_quadrature"});
  r.provenance.methods = {"mc"};

  if (L > 0) {
    CheckReport trend = passed_check("approximation_excess_decreasing", "");
    CheckReport positive = passed_check("approximation_gaps_not_violated", "");
    trend.samples = positive.samples = budgets.samples;
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < L; ++j) {
      const std::string tag = "f_" + std::to_string(ladder[j]);
      const GapEstimate g = covariance_gap(m, 3 + 3 * j, 4 + 3 * j, 5 + 3 * j);
      const double excess = m.mean(3 + 3 * L + j);
      r.details.push_back({tag + "_gap", g.value, g.std_error, "mc"});
      r.details.push_back({tag + "_mass_excess", excess, m.std_error(3 + 3 * L + j), "mc"});
      if (excess > previous) {
        trend.passed = false;
        trend.detail = "mu(f_n) - mu(A) grew at n=" + std::to_string(ladder[j]);
      }
      if (classify(g, true) == Verdict::violated) {
        positive.passed = false;
        positive.detail = tag + " gap " + fmt(g.value) + " below -5 se";
      }
      previous = excess;
    }
    r.diagnostics.push_back(trend);
    r.diagnostics.push_back(positive);
    const ClassBudget cb = class_budget(budgets);
    const int top = ladder.back();
    auto cls = check_class_Cd(fn_field(a, top), mu, cb.rays, cb.levels, seed, cb.mc);
    for (auto& c : prefixed(std::move(cls), "f_" + std::to_string(top) + ":")) r.diagnostics.push_back(std::move(c));
    r.provenance.methods.push_back("fn_ladder");
  }
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

VerificationReport verify_theorem_1_2(const ConvexBody& a, const ProductDensity& measure, const ConvexBody& b,
                                      const Budgets& budgets, std::uint64_t seed) {
  const Measure mu = measure;
  const std::size_t d = a.dim();
  if (static_cast<int>(d) != measure.dim()) throw DimensionError(static_cast<std::size_t>(measure.dim()), d);
  if (b.dim() != d) throw DimensionError(d, b.dim());
  VerificationReport r;
  r.theorem = "1.2";
  r.instance = a.kind() + " | " + describe(mu) + " | " + b.kind();
  CheckReport closed;
  try {
    closed = is_projection_closed(a, budgets.hypothesis_samples, seed ^ 0x9e3779b97f4a7c15ULL);
  } catch (const std::exception& e) {
    closed = failed_check("projection_closed", std::string("could not sample A: ") + e.what());
  }
  r.hypotheses = {closed, bounded_check(a), convex_check(a), separable_check(b)};

  const JointEstimate est = mc_joint(mu, a, b, budgets.samples, seed, budgets.exec);
  fill_from_joint(r, est, "mu(A n B)", "mu(A) mu(B)");
  r.provenance.methods = {"mc"};
  if (d <= 4 && separable_check(b).passed) {
    const MeasureEstimate sliced = sliced_measure(measure, b);
    r.details.push_back({"second_marginal_sliced", sliced.value, sliced.discretization, "nested_quadrature"});
    CheckReport cross = passed_check("second_marginal_cross_check", "");
    cross.samples = budgets.samples;
    const double diff = est.second.value - sliced.value;
    cross.passed = std::abs(diff) <= 5.0 * est.second.std_error + sliced.discretization + 1e-9;
    cross.detail = "mc - sliced = " + fmt(diff);
    r.diagnostics.push_back(cross);
    r.provenance.methods.push_back("nested_quadrature");
  }
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

VerificationReport verify_theorem_3_1(const ScalarField& field, const ProductDensity& measure, const ConvexBody& b,
                                      const Budgets& budgets, std::uint64_t seed) {
  const Measure mu = measure;
  require_field_dim(field, mu);
  if (b.dim() != field.dim) throw DimensionError(field.dim, b.dim());
  VerificationReport r;
  r.theorem = "3.1";
  r.instance = field.description + " | " + describe(mu) + " | " + b.kind();
  const ClassBudget cb = class_budget(budgets);
  r.hypotheses = check_class_Cbar_d(field, mu, cb.rays, cb.levels, seed);
  r.hypotheses.push_back(separable_check(b));
  const JointEstimate est = mc_correlation(mu, field, indicator_field(b), budgets.samples, seed, budgets.exec);
  fill_from_joint(r, est, "mu(f 1_B)", "mu(f) mu(B)");
  r.provenance.methods = {"mc"};
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

}  // namespace gci
