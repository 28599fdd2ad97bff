#include "gci/search.hpp"

#include "gci/config.hpp"
#include "gci/rng.hpp"
#include "gci/transport.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace gci {

namespace {

class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng_.uniform() * static_cast<double>(hi - lo + 1));
  }
  Point direction(std::size_t d) {
    Point p(static_cast<Eigen::Index>(d));
    do {
      for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng_.normal();
    } while (p.norm() < 1e-12);
    return p / p.norm();
  }
  Matrix rotation(std::size_t d) {
    Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng_.normal();
    return Eigen::HouseholderQR<Matrix>(g).householderQ();
  }
  Matrix spd(std::size_t d, double lo, double hi) {
    const Matrix q = rotation(d);
    Point ev(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = uniform(lo, hi);
    const Matrix m = q * ev.asDiagonal() * q.transpose();
    return 0.5 * (m + m.transpose());
  }

 private:
  RandomStream rng_;
};

// Substreams of one instance seed.
enum Stream : std::uint64_t { kBodyStream = 1, kMeasureStream = 2, kBStream = 3, kExtraStream = 4, kVerifyStream = 5 };

void add_box(std::vector<Halfspace>& hs, const Point& center, const std::vector<double>& lo_width,
             const std::vector<double>& hi_width) {
  const auto d = center.size();
  for (Eigen::Index i = 0; i < d; ++i) {
    Point e = Point::Zero(d);
    e[i] = 1.0;
    hs.push_back({e, center[i] + hi_width[static_cast<std::size_t>(i)]});
    hs.push_back({-e, -center[i] + lo_width[static_cast<std::size_t>(i)]});
  }
}

double box_hint(const Point& center, const std::vector<double>& lo_width, const std::vector<double>& hi_width) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < center.size(); ++i) {
    const double w = std::max(std::abs(center[i] + hi_width[static_cast<std::size_t>(i)]),
                              std::abs(center[i] - lo_width[static_cast<std::size_t>(i)]));
    s += w * w;
  }
  return std::sqrt(s);
}

std::vector<double> widths(Draw& g, std::size_t d, double lo, double hi) {
  std::vector<double> w(d);
  for (auto& v : w) v = g.uniform(lo, hi);
  return w;
}

ConvexBody random_polytope(Draw& g, std::size_t d, bool origin) {
  const auto D = static_cast<Eigen::Index>(d);
  Point center = Point::Zero(D);
  if (!origin) center = g.direction(d) * g.uniform(0.5, 2.5);
  std::vector<Halfspace> hs;
  const std::size_t m = g.integer(2 * d, 6 * d);
  for (std::size_t k = 0; k < m; ++k) {
    const Point n = g.direction(d);
    hs.push_back({n, n.dot(center) + g.uniform(0.2, 2.0)});
  }
  const auto lo = widths(g, d, 1.0, 3.0);
  const auto hi = widths(g, d, 1.0, 3.0);
  add_box(hs, center, lo, hi);
  if (!origin) {
    // Separates the origin from a neighbourhood of the centre.
    const double c = center.norm();
    hs.push_back({-center / c, -c * g.uniform(0.2, 0.8)});
  }
  return ConvexBody::hpolytope(std::move(hs), box_hint(center, lo, hi));
}

ConvexBody random_symmetric_polytope(Draw& g, std::size_t d) {
  std::vector<Halfspace> hs;
  // Kept fat enough for rejection sampling from the bounding ball in d = 5.
  const std::size_t m = g.integer(d, 2 * d);
  for (std::size_t k = 0; k < m; ++k) {
    const Point n = g.direction(d);
    const double b = g.uniform(0.6, 2.0);
    hs.push_back({n, b});
    hs.push_back({-n, b});
  }
  const auto w = widths(g, d, 1.0, 3.0);
  const Point zero = Point::Zero(static_cast<Eigen::Index>(d));
  add_box(hs, zero, w, w);
  return ConvexBody::hpolytope(std::move(hs), box_hint(zero, w, w));
}

// {sum_i w+_i x_i^+ + w-_i x_i^- <= 1} cut by a box around the origin,
// written with one halfspace per sign pattern.
ConvexBody random_projection_closed(Draw& g, std::size_t d) {
  if (d > 12) throw std::invalid_argument("projection-closed instances are limited to d <= 12");
  const auto D = static_cast<Eigen::Index>(d);
  const auto wp = widths(g, d, 0.4, 2.5);
  const auto wm = widths(g, d, 0.4, 2.5);
  std::vector<Halfspace> hs;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point n(D);
    for (std::size_t i = 0; i < d; ++i) n[static_cast<Eigen::Index>(i)] = (mask >> i) & 1U ? -wm[i] : wp[i];
    hs.push_back({n, 1.0});
  }
  const auto lo = widths(g, d, 0.3, 2.0);
  const auto hi = widths(g, d, 0.3, 2.0);
  const Point zero = Point::Zero(D);
  add_box(hs, zero, lo, hi);
  return ConvexBody::hpolytope(std::move(hs), box_hint(zero, lo, hi));
}

Measure random_measure(Draw& g, std::size_t d, MeasureKind kind) {
  const int di = static_cast<int>(d);
  switch (kind) {
    case MeasureKind::gaussian:
      return gaussian(di);
    case MeasureKind::radial_grid: {
      const double s = g.uniform(0.7, 1.5);
      std::vector<double> t(25);
      std::vector<double> rho(25);
      for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = 0.25 * static_cast<double>(k) * s;
        rho[k] = std::exp(-0.5 * (t[k] / s) * (t[k] / s)) * g.uniform(0.5, 1.5);
      }
      return RadialDensity(di, Profile::from_grid(std::move(t), std::move(rho)));
    }
    case MeasureKind::product: {
      std::vector<Marginal> ms;
      for (std::size_t i = 0; i < d; ++i) {
        if (g.uniform(0.0, 1.0) < 0.5)
          ms.emplace_back(Profile::gaussian(g.uniform(0.5, 2.0)));
        else
          ms.emplace_back(Profile::exponential_power(g.uniform(0.5, 1.5), g.uniform(1.0, 3.0)));
      }
      return ProductDensity(std::move(ms));
    }
  }
  throw std::invalid_argument("unknown measure kind");
}

BatchRow row_from(const VerificationReport& r, std::size_t id, std::size_t d, const std::string& descriptor,
                  std::uint64_t seed) {
  BatchRow row;
  row.instance_id = id;
  row.theorem = r.theorem;
  row.dim = d;
  row.body_hash = fnv1a_hex(descriptor);
  row.gap = r.gap.value;
  row.se = r.gap.std_error;
  row.verdict = r.verdict;
  row.seed = seed;
  row.instance = r.instance;
  return row;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t seed, std::size_t index) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Instance random_instance(const InstanceSpec& spec, std::uint64_t seed) {
  const std::size_t d = spec.dim;
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  if (!spec.origin && spec.body != BodyKind::polytope)
    throw std::invalid_argument("only polytopes can be generated away from the origin");
  Draw body_draw(seed, kBodyStream);
  ConvexBody a = [&] {
    switch (spec.body) {
      case BodyKind::polytope:
        return random_polytope(body_draw, d, spec.origin);
      case BodyKind::symmetric_polytope:
        return random_symmetric_polytope(body_draw, d);
      case BodyKind::projection_closed:
        return random_projection_closed(body_draw, d);
      case BodyKind::ellipsoid:
        break;
    }
    Point ev(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double axis = body_draw.uniform(0.3, 2.0);
      ev[i] = 1.0 / (axis * axis);
    }
    const Matrix q = body_draw.rotation(d);
    const Matrix m = q * ev.asDiagonal() * q.transpose();
    return ConvexBody::quadratic_ellipsoid(0.5 * (m + m.transpose()));
  }();
  Draw measure_draw(seed, kMeasureStream);
  Measure mu = random_measure(measure_draw, d, spec.measure);

  Draw b_draw(seed, kBStream);
  double r = 0.0;
  ConvexBody b = ConvexBody::ball(d, 1.0);
  if (spec.ellipsoid_b) {
    b = ConvexBody::ellipsoid(widths(b_draw, d, 0.5, 2.5));
  } else {
    // A radius whose ball carries between 20% and 80% of the mass.
    const double p = b_draw.uniform(0.2, 0.8);
    if (const auto* radial = std::get_if<RadialDensity>(&mu)) {
      r = radial->radial_law().quantile(p);
    } else {
      r = b_draw.uniform(0.3, 2.5);
    }
    b = ConvexBody::ball(d, r);
  }
  std::string descriptor = body_json(a).dump();
  return Instance{std::move(a), std::move(mu), std::move(b), r, std::move(descriptor)};
}

void BatchReport::add(BatchRow row) {
  switch (row.verdict) {
    case Verdict::confirmed:
      ++confirmed;
      break;
    case Verdict::inconclusive:
      ++inconclusive;
      break;
    case Verdict::violated:
      ++violated;
      break;
    case Verdict::inapplicable_hypothesis:
      ++inapplicable;
      break;
  }
  rows.push_back(std::move(row));
}

BatchReport batch_verify(const std::string& theorem, std::size_t n_instances, const std::vector<std::size_t>& dims,
                         const Budgets& budgets, std::uint64_t seed) {
  static const std::vector<std::string> known = {"1.1", "1.2", "2.1", "4.1", "corollary"};
  if (std::find(known.begin(), known.end(), theorem) == known.end())
    throw std::invalid_argument("unknown theorem tag \"" + theorem + "\"");
  if (n_instances > 0 && dims.empty()) throw std::invalid_argument("no dimensions given");
  BatchReport report;
  for (std::size_t i = 0; i < n_instances; ++i) {
    const std::size_t d = dims[i % dims.size()];
    const std::uint64_t s = instance_seed(seed, i);
    const std::uint64_t vs = instance_seed(s, kVerifyStream);
    VerificationReport r;
    std::string descriptor;
    if (theorem == "1.1" || theorem == "2.1") {
      InstanceSpec spec{d, i % 3 == 2 ? BodyKind::ellipsoid : BodyKind::polytope,
                        i % 2 == 1 ? MeasureKind::radial_grid : MeasureKind::gaussian, true, false};
      const Instance inst = random_instance(spec, s);
      const auto& radial = std::get<RadialDensity>(inst.measure);
      descriptor = inst.descriptor;
      if (theorem == "1.1") {
        r = verify_theorem_1_1(inst.a, radial, inst.ball_radius, budgets, vs);
      } else {
        Draw g(s, kExtraStream);
        r = verify_theorem_2_1(fn_field(inst.a, static_cast<int>(g.integer(1, 16))), radial, inst.ball_radius,
                               budgets, vs);
      }
    } else if (theorem == "1.2") {
      const Instance inst =
          random_instance({d, BodyKind::projection_closed, MeasureKind::product, true, true}, s);
      descriptor = inst.descriptor;
      r = verify_theorem_1_2(inst.a, std::get<ProductDensity>(inst.measure), inst.b, budgets, vs);
    } else if (theorem == "4.1") {
      Draw g(s, kExtraStream);
      const ScalarField f = gaussian_bump(d, g.uniform(0.1, 1.0));
      const Matrix sigma = g.spd(d, 0.3, 3.0);
      const QuadraticProfile phi =
          g.uniform(0.0, 1.0) < 0.5 ? exp_profile(g.uniform(0.1, 1.0)) : phi_n_profile(static_cast<int>(g.integer(1, 8)));
      descriptor = f.description + " | " + phi.description;
      r = verify_theorem_4_1(f, sigma, phi, budgets, vs);
    } else {
      const Instance inst = random_instance({d, BodyKind::symmetric_polytope, MeasureKind::gaussian, true, false}, s);
      Draw g(s, kExtraStream);
      descriptor = inst.descriptor;
      r = verify_corollary(inst.a, g.spd(d, 0.3, 3.0), budgets, vs);
    }
    BatchRow row = row_from(r, i, d, descriptor, s);
    if (row.verdict == Verdict::violated)
      std::cerr << "VIOLATED: theorem " << theorem << " instance " << i << " seed " << s << " gap "
                << format_double(row.gap) << " se " << format_double(row.se) << " | " << row.instance << '\n';
    report.add(std::move(row));
  }
  return report;
}

BatchReport necessity_scan(const std::string& broken, std::size_t n_instances, const Budgets& budgets,
                           std::uint64_t seed) {
  if (std::find(kBrokenHypotheses.begin(), kBrokenHypotheses.end(), broken) == kBrokenHypotheses.end())
    throw std::invalid_argument("unknown hypothesis tag \"" + broken + "\"");
  BatchReport report;
  for (std::size_t i = 0; i < n_instances; ++i) {
    const std::uint64_t s = instance_seed(seed, i);
    const std::uint64_t vs = instance_seed(s, kVerifyStream);
    Draw g(s, kExtraStream);
    VerificationReport r;
    std::string descriptor;
    std::size_t d = 1;
    if (broken == "origin-not-in-A") {
      // A = [a, a + w] with a > 0 against B = [-r, r].
      const double lo = g.uniform(0.05, 3.0);
      const double w = g.uniform(0.2, 2.0);
      const ConvexBody a = ConvexBody::box({lo}, {lo + w});
      descriptor = body_json(a).dump();
      r = verify_theorem_1_1(a, gaussian(1), g.uniform(0.3, 2.0), budgets, vs);
    } else if (broken == "A-not-projection-closed") {
      d = 2;
      // Redraw until the projection check rejects the body.
      for (std::uint64_t attempt = 0;; ++attempt) {
        const Instance inst =
            random_instance({d, BodyKind::polytope, MeasureKind::product, true, true}, instance_seed(s, attempt));
        if (attempt < 64 && is_projection_closed(inst.a, budgets.hypothesis_samples, s).passed) continue;
        descriptor = inst.descriptor;
        r = verify_theorem_1_2(inst.a, std::get<ProductDensity>(inst.measure), inst.b, budgets, vs);
        break;
      }
    } else if (broken == "phi-not-decreasing") {
      const ScalarField f = gaussian_bump(d, g.uniform(0.25, 1.0));
      Matrix sigma(1, 1);
      sigma(0, 0) = g.uniform(0.5, 2.0);
      const QuadraticProfile phi = power_profile(g.uniform(0.5, 2.0));
      descriptor = f.description + " | " + phi.description;
      r = verify_theorem_4_1(f, sigma, phi, budgets, vs);
    } else {
      // exp(+a x^2) keeps E f^2 finite for a < 1/4.
      const double a = g.uniform(0.05, 0.2);
      const ScalarField f = custom_field(1, [a](const Point& x) { return std::exp(a * x.squaredNorm()); },
                                         "exp(+" + format_double(a) + "|x|^2)");
      Matrix sigma(1, 1);
      sigma(0, 0) = g.uniform(0.5, 2.0);
      const QuadraticProfile phi = exp_profile(g.uniform(0.25, 1.0));
      descriptor = f.description + " | " + phi.description;
      r = verify_theorem_4_1(f, sigma, phi, budgets, vs);
    }
    report.add(row_from(r, i, d, descriptor, s));
  }
  const auto signal = [](const BatchRow& row) {
    return row.se > 0.0 ? row.gap / row.se : (row.gap < 0.0 ? -HUGE_VAL : row.gap == 0.0 ? 0.0 : HUGE_VAL);
  };
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [&](const BatchRow& x, const BatchRow& y) { return signal(x) < signal(y); });
  return report;
}

std::size_t count_negative(const BatchReport& report, double k) {
  return static_cast<std::size_t>(std::count_if(report.rows.begin(), report.rows.end(), [k](const BatchRow& row) {
    return row.gap < -k * row.se - 1e-12;
  }));
}

std::string to_csv(const BatchReport& report) {
  std::ostringstream os;
  os << "instance_id,theorem,d,body_descriptor_hash,gap,se,verdict,seed\n";
  for (const auto& row : report.rows)
    os << row.instance_id << ',' << row.theorem << ',' << row.dim << ',' << row.body_hash << ','
       << format_double(row.gap) << ',' << format_double(row.se) << ',' << to_string(row.verdict) << ',' << row.seed
       << '\n';
  return os.str();
}

}  // namespace gci
