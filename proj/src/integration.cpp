#include "gci/integration.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace gci {

namespace {

template <std::size_t N>
QuadratureRule make_rule() {
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& abscissa = rule::abscissa();
  const auto& weight = rule::weights();
  QuadratureRule out;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const double x = abscissa[i];
    const double w = weight[i];
    if (x == 0.0) {
      out.nodes.push_back(0.5);
      out.weights.push_back(0.5 * w);
      continue;
    }
    out.nodes.push_back(0.5 * (1.0 - x));
    out.weights.push_back(0.5 * w);
    out.nodes.push_back(0.5 * (1.0 + x));
    out.weights.push_back(0.5 * w);
  }
  return out;
}

// Coordinate-separable description: body = { sum_i level_i(|x_i|) <= 1 }.
struct Separable {
  std::vector<std::function<double(double)>> level;
  std::vector<std::function<double(double)>> inverse;
};

Separable separable(const ConvexBody& body) {
  Separable s;
  auto add_axis = [&s](double a) {
    s.level.emplace_back([a](double x) { return (x / a) * (x / a); });
    s.inverse.emplace_back([a](double c) { return a * std::sqrt(c); });
  };
  if (const auto* b = std::get_if<Ball>(&body.shape())) {
    for (std::size_t i = 0; i < b->dim; ++i) add_axis(b->radius);
  } else if (const auto* e = std::get_if<Ellipsoid>(&body.shape())) {
    for (double a : e->semi_axes) add_axis(a);
  } else if (const auto* g = std::get_if<GeneralizedBall>(&body.shape())) {
    for (const auto& f : g->components) {
      s.level.emplace_back([&f](double x) { return f(x); });
      s.inverse.emplace_back([&f](double c) { return f.inverse(c); });
    }
  } else {
    throw std::invalid_argument("sliced integration needs a ball, ellipsoid or generalized ball");
  }
  return s;
}

// Mass of { sum_{i in coords} level_i(|x_i|) <= c } under the product of the
// listed marginals. The last listed coordinate is integrated outermost with
// x = w (3u^2 - 2u^3), which smooths the square-root behaviour at both ends.
double separable_mass(const ProductDensity& m, const Separable& s, std::span<const std::size_t> coords, double c,
                      const QuadratureRule& rule) {
  if (c <= 0.0) return 0.0;
  const std::size_t j = coords.back();
  const double w = s.inverse[j](c);
  if (coords.size() == 1) return m.marginal(j).interval_mass(w);
  const auto inner = coords.first(coords.size() - 1);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double u = rule.nodes[q];
    const double x = w * u * u * (3.0 - 2.0 * u);
    const double jac = w * 6.0 * u * (1.0 - u);
    const double rest = c - s.level[j](x);
    if (rest <= 0.0) continue;
    sum += rule.weights[q] * jac * m.marginal(j).rho(x) * separable_mass(m, s, inner, rest, rule);
  }
  return 2.0 * sum;
}

}  // namespace

const QuadratureRule& gauss_legendre_unit(std::size_t n) {
  static std::mutex lock;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QuadratureRule rule;
  switch (n) {
    case 8: rule = make_rule<8>(); break;
    case 16: rule = make_rule<16>(); break;
    case 32: rule = make_rule<32>(); break;
    case 64: rule = make_rule<64>(); break;
    case 128: rule = make_rule<128>(); break;
    case 256: rule = make_rule<256>(); break;
    default: throw std::invalid_argument("Gauss-Legendre order must be one of 8, 16, 32, 64, 128, 256");
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

MeasureEstimate mc_integral(const Measure& measure, const ScalarField& field, std::size_t n, std::uint64_t seed,
                            Execution exec) {
  if (n == 0) throw std::invalid_argument("mc_integral needs at least one sample");
  if (field.dim != static_cast<std::size_t>(dim(measure))) throw DimensionError(static_cast<std::size_t>(dim(measure)), field.dim);
  const Moments m = accumulate(measure, {seed, n}, 1, [&](const Point& x, std::span<double> out) { out[0] = field(x); }, exec);
  return {m.mean(0), m.std_error(0), n, MeasureEstimate::Method::mc};
}

JointEstimate mc_correlation(const Measure& measure, const ScalarField& f, const ScalarField& g, std::size_t n,
                             std::uint64_t seed, Execution exec) {
  if (n == 0) throw std::invalid_argument("mc_correlation needs at least one sample");
  const auto d = static_cast<std::size_t>(dim(measure));
  if (f.dim != d) throw DimensionError(d, f.dim);
  if (g.dim != d) throw DimensionError(d, g.dim);
  const Moments m = accumulate(
      measure, {seed, n}, 3,
      [&](const Point& x, std::span<double> out) {
        const double a = f(x);
        const double b = g(x);
        out[0] = a * b;
        out[1] = a;
        out[2] = b;
      },
      exec);
  JointEstimate est;
  est.joint = {m.mean(0), m.std_error(0), n, MeasureEstimate::Method::mc};
  est.first = {m.mean(1), m.std_error(1), n, MeasureEstimate::Method::mc};
  est.second = {m.mean(2), m.std_error(2), n, MeasureEstimate::Method::mc};
  est.gap = covariance_gap(m, 0, 1, 2);
  return est;
}

JointEstimate mc_joint(const Measure& measure, const ConvexBody& a, const ConvexBody& b, std::size_t n,
                       std::uint64_t seed, Execution exec) {
  return mc_correlation(measure, indicator_field(a), indicator_field(b), n, seed, exec);
}

MeasureEstimate sphere_average(const ScalarField& field, double t, std::size_t m_dirs, std::uint64_t seed) {
  if (!(t >= 0.0)) throw std::invalid_argument("sphere radius must be nonnegative");
  if (m_dirs < 2) throw std::invalid_argument("sphere average needs at least two directions");
  const std::size_t d = field.dim;
  MeasureEstimate est;
  est.method = MeasureEstimate::Method::radial_quadrature;
  if (field.radial) {
    est.value = field.radial(t);
    est.n_samples = 1;
    return est;
  }
  Point x(static_cast<Eigen::Index>(d));
  if (d == 1) {
    x[0] = t;
    const double a = field(x);
    x[0] = -t;
    est.value = 0.5 * (a + field(x));
    est.n_samples = 2;
    return est;
  }
  if (d == 2) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m_dirs; ++k) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(m_dirs);
      x[0] = t * std::cos(theta);
      x[1] = t * std::sin(theta);
      sum += field(x);
    }
    est.value = sum / static_cast<double>(m_dirs);
    est.n_samples = m_dirs;
    return est;
  }
  RandomStream rng(seed, 0);
  Moments m(1);
  for (std::size_t k = 0; k < m_dirs; ++k) {
    double sq = 0.0;
    do {
      for (auto& v : x) v = rng.normal();
      sq = x.squaredNorm();
    } while (sq == 0.0);
    x *= t / std::sqrt(sq);
    const double v = field(x);
    m.add(std::span<const double>(&v, 1));
  }
  est.value = m.mean(0);
  est.std_error = m.std_error(0);
  est.n_samples = m_dirs;
  est.method = MeasureEstimate::Method::mc;
  return est;
}

MeasureEstimate phi_derivative(const ScalarField& field, const RadialDensity& measure, double t, std::size_t m_dirs,
                               double mu_f, std::uint64_t seed) {
  if (field.dim != static_cast<std::size_t>(measure.dim())) throw DimensionError(static_cast<std::size_t>(measure.dim()), field.dim);
  const MeasureEstimate avg = sphere_average(field, t, m_dirs, seed);
  const int d = measure.dim();
  const double factor = measure.rho(t) * std::pow(t, d - 1) * sphere_area(d);
  MeasureEstimate out = avg;
  out.value = factor * (avg.value - mu_f);
  out.std_error = factor * avg.std_error;
  return out;
}

std::vector<double> radial_cumulative(const ScalarField& field, const RadialDensity& measure, const std::vector<double>& t,
                                      std::size_t m_dirs) {
  const int d = measure.dim();
  if (d > 2 && !field.radial) throw std::invalid_argument("deterministic radial integration needs d <= 2 or a radial field");
  if (field.dim != static_cast<std::size_t>(d)) throw DimensionError(static_cast<std::size_t>(d), field.dim);
  const auto& rule = gauss_legendre_unit(16);
  const double area = sphere_area(d);
  std::vector<double> out;
  out.reserve(t.size());
  double sum = 0.0;
  double reached = 0.0;
  for (double target : t) {
    if (target < reached) throw std::invalid_argument("radial grid must be nondecreasing");
    const double upper = std::min(target, measure.truncation_radius());
    if (upper > reached) {
      // Panels of width <= 0.125 between consecutive grid points.
      const auto panels = static_cast<std::size_t>(std::ceil((upper - reached) / 0.125));
      const double width = (upper - reached) / static_cast<double>(panels);
      for (std::size_t p = 0; p < panels; ++p) {
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double r = reached + width * (static_cast<double>(p) + rule.nodes[q]);
          const double avg = sphere_average(field, r, m_dirs, 0).value;
          sum += rule.weights[q] * width * measure.rho(r) * std::pow(r, d - 1) * avg;
        }
      }
      reached = upper;
    }
    out.push_back(area * sum);
  }
  return out;
}

MeasureEstimate radial_integral(const ScalarField& field, const RadialDensity& measure, double t, std::size_t m_dirs) {
  MeasureEstimate est;
  est.method = MeasureEstimate::Method::radial_quadrature;
  if (!(t > 0.0)) {
    radial_cumulative(field, measure, {0.0}, m_dirs);
    return est;
  }
  est.value = radial_cumulative(field, measure, {t}, m_dirs).front();
  est.n_samples = 1;
  return est;
}

MeasureEstimate radial_total(const ScalarField& field, const RadialDensity& measure, std::size_t m_dirs) {
  double t = measure.truncation_radius();
  if (field.support_radius) t = std::min(t, *field.support_radius);
  return radial_integral(field, measure, t, m_dirs);
}

MeasureEstimate sliced_measure(const ProductDensity& measure, const ConvexBody& body, std::size_t nodes_per_level) {
  const auto d = static_cast<std::size_t>(measure.dim());
  if (body.dim() != d) throw DimensionError(d, body.dim());
  if (d > 4) throw std::invalid_argument("sliced quadrature is limited to d <= 4; use Monte Carlo in higher dimension");
  const Separable s = separable(body);
  std::vector<std::size_t> coords(d);
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  const double coarse = separable_mass(measure, s, coords, 1.0, gauss_legendre_unit(nodes_per_level));
  const double fine = separable_mass(measure, s, coords, 1.0, gauss_legendre_unit(2 * nodes_per_level));
  MeasureEstimate est;
  est.value = coarse;
  est.method = MeasureEstimate::Method::nested_quadrature;
  est.n_samples = static_cast<std::size_t>(std::pow(static_cast<double>(nodes_per_level), static_cast<double>(d - 1)));
  est.discretization = std::abs(fine - coarse);
  return est;
}

double slice_mass(const ProductDensity& measure, const ConvexBody& body, std::size_t axis, double value,
                  std::size_t nodes_per_level) {
  const auto d = static_cast<std::size_t>(measure.dim());
  if (body.dim() != d) throw DimensionError(d, body.dim());
  if (axis >= d) throw std::invalid_argument("slice axis out of range");
  if (d < 2) throw std::invalid_argument("slicing needs d >= 2");
  if (d > 4) throw std::invalid_argument("sliced quadrature is limited to d <= 4");
  const Separable s = separable(body);
  std::vector<std::size_t> coords;
  for (std::size_t i = 0; i < d; ++i)
    if (i != axis) coords.push_back(i);
  const double level = 1.0 - s.level[axis](std::abs(value));
  return separable_mass(measure, s, coords, level, gauss_legendre_unit(nodes_per_level));
}

MeasureEstimate grid_oracle_2d(const Measure& measure, const ScalarField& field, std::size_t cells,
                               std::optional<AxisBox> box) {
  if (dim(measure) != 2 || field.dim != 2) throw std::invalid_argument("grid oracle is two-dimensional");
  if (cells == 0) throw std::invalid_argument("grid oracle needs cells");
  const double h = truncation_half_width(measure);
  AxisBox region{{-h, -h}, {h, h}};
  if (box) {
    region = *box;
  } else if (field.support_box) {
    for (std::size_t i = 0; i < 2; ++i) {
      region.lo[i] = std::max(region.lo[i], field.support_box->lo[i]);
      region.hi[i] = std::min(region.hi[i], field.support_box->hi[i]);
    }
  } else if (field.support_radius) {
    const double r = std::min(h, *field.support_radius);
    region = {{-r, -r}, {r, r}};
  }
  const double step_x = (region.hi[0] - region.lo[0]) / static_cast<double>(cells);
  const double step_y = (region.hi[1] - region.lo[1]) / static_cast<double>(cells);
  double sum = 0.0;
  Point x(2);
  for (std::size_t i = 0; i < cells; ++i) {
    x[0] = region.lo[0] + (static_cast<double>(i) + 0.5) * step_x;
    double row = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      x[1] = region.lo[1] + (static_cast<double>(j) + 0.5) * step_y;
      const double f = field(x);
      if (f != 0.0) row += f * density(measure, x);
    }
    sum += row;
  }
  MeasureEstimate est;
  est.value = sum * step_x * step_y;
  est.method = MeasureEstimate::Method::grid_oracle;
  est.n_samples = cells * cells;
  return est;
}

}  // namespace gci
