#include "gci/transport.hpp"

#include "gci/mc_kernel.hpp"
#include "gci/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gci {

namespace {

constexpr double kLogConcaveTol = 1e-6;
constexpr std::uint64_t kCheckStream = 1ULL << 41;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Point uniform_in_ball(RandomStream& rng, std::size_t d, double radius) {
  Point u(static_cast<Eigen::Index>(d));
  double sq = 0.0;
  do {
    for (auto& v : u) v = rng.normal();
    sq = u.squaredNorm();
  } while (sq == 0.0);
  return u * (radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d)) / std::sqrt(sq));
}

double probe_radius(const ScalarField& f) { return f.support_radius ? *f.support_radius : 5.0; }

CheckReport check(std::string name, bool passed, std::string detail, std::size_t samples = 0) {
  CheckReport c;
  c.name = std::move(name);
  c.passed = passed;
  c.detail = std::move(detail);
  c.samples = samples;
  return c;
}

CheckReport symmetric_body_check(const ConvexBody& a, std::size_t n, std::uint64_t seed) {
  try {
    return is_symmetric(a, n, seed);
  } catch (const std::exception& e) {
    return check("symmetric", false, std::string("could not sample A: ") + e.what());
  }
}

}  // namespace

Density1D normal_density(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("standard deviation must be positive");
  std::ostringstream os;
  os.precision(17);
  os << "normal(sigma=" << sigma << ")";
  return {[sigma](double x) { return std::exp(-0.5 * (x / sigma) * (x / sigma)); }, -12.0 * sigma, 12.0 * sigma, os.str()};
}

Density1D tilted_normal(double sigma, std::function<double(double)> tilt, std::string tilt_description) {
  Density1D base = normal_density(sigma);
  auto g = base.density;
  base.density = [g, tilt = std::move(tilt)](double x) { return g(x) * tilt(x); };
  base.description += " * " + tilt_description;
  return base;
}

double TransportMap1D::operator()(double t) const {
  if (t >= x.front() && t <= x.back()) {
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - x.begin()), x.size() - 1);
    if (i == 0) return y.front();
    const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + w * (y[i] - y[i - 1]);
  }
  return target->quantile(source->cdf(t));
}

double TransportMap1D::push_forward_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(target->cdf(y[i]) - source->cdf(x[i])));
  return worst;
}

TransportMap1D monotone_map(const Density1D& source, const Density1D& target, std::size_t points, double tail) {
  if (points < 3 || points % 2 == 0) throw std::invalid_argument("transport grid needs an odd number (>= 3) of points");
  if (!(tail > 0.0 && tail < 0.5)) throw std::invalid_argument("tail mass must lie in (0, 1/2)");
  TransportMap1D map;
  map.source = std::make_shared<const Tabulated1D>(source.density, source.lo, source.hi, kTransportNodes);
  map.target = std::make_shared<const Tabulated1D>(target.density, target.lo, target.hi, kTransportNodes);
  map.description = source.description + " -> " + target.description;
  const double half = std::min(-map.source->quantile(tail), map.source->quantile(1.0 - tail));
  if (!(half > 0.0)) throw std::invalid_argument("source law is not centred: no symmetric grid around 0");
  const std::size_t mid = points / 2;
  map.x.assign(points, 0.0);
  for (std::size_t i = 0; i < mid; ++i) {
    const double v = half * static_cast<double>(mid - i) / static_cast<double>(mid);
    map.x[i] = -v;
    map.x[points - 1 - i] = v;
  }
  map.y.resize(points);
  for (std::size_t i = 0; i < points; ++i) map.y[i] = map.target->quantile(map.source->cdf(map.x[i]));
  return map;
}

ContractionResult contraction_check(const TransportMap1D& map, bool symmetric) {
  ContractionResult r;
  r.max_increment_ratio = -std::numeric_limits<double>::infinity();
  r.max_norm_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < map.x.size(); ++i)
    r.max_increment_ratio = std::max(r.max_increment_ratio, (map.y[i + 1] - map.y[i]) / (map.x[i + 1] - map.x[i]));
  for (std::size_t i = 0; i < map.x.size(); ++i)
    r.max_norm_excess = std::max(r.max_norm_excess, std::abs(map.y[i]) - std::abs(map.x[i]));
  r.passed = r.max_increment_ratio <= 1.0 + kContractionTol && (!symmetric || r.max_norm_excess <= kContractionTol);
  return r;
}

OddnessResult oddness_check(const TransportMap1D& map, double tol) {
  OddnessResult r;
  const std::size_t n = map.x.size();
  for (std::size_t i = 0; i < n; ++i) r.max_defect = std::max(r.max_defect, std::abs(map.y[i] + map.y[n - 1 - i]));
  r.passed = r.max_defect <= tol;
  return r;
}

std::string to_csv(const TransportMap1D& map) {
  std::ostringstream os;
  os.precision(17);
  os << "x,T\n";
  for (std::size_t i = 0; i < map.x.size(); ++i) os << map.x[i] << "," << map.y[i] << "\n";
  return os.str();
}

CheckReport logconcavity_check(const ScalarField& field, std::size_t n_pairs, std::uint64_t seed) {
  CheckReport c = check("log_concave", true, "", n_pairs);
  RandomStream rng(seed, kCheckStream + 1);
  const double radius = probe_radius(field);
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const Point x = uniform_in_ball(rng, field.dim, radius);
    const Point y = uniform_in_ball(rng, field.dim, radius);
    const double lambda = rng.uniform();
    const double fx = field(x);
    const double fy = field(y);
    if (fx < 0.0 || fy < 0.0) {
      c.passed = false;
      c.witness = fx < 0.0 ? x : y;
      c.detail = "negative value";
      return c;
    }
    if (fx == 0.0 || fy == 0.0) continue;
    const double mean = std::exp(lambda * std::log(fx) + (1.0 - lambda) * std::log(fy));
    const double fz = field(lambda * x + (1.0 - lambda) * y);
    if (fz < mean - kLogConcaveTol) {
      c.passed = false;
      c.witness = x;
      c.image = y;
      c.detail = "at lambda=" + fmt(lambda) + ": f=" + fmt(fz) + " below geometric mean " + fmt(mean);
      return c;
    }
  }
  return c;
}

CheckReport symmetry_check(const ScalarField& field, std::size_t n_points, std::uint64_t seed) {
  CheckReport c = check("symmetric_field", true, "", n_points);
  RandomStream rng(seed, kCheckStream + 2);
  const double radius = probe_radius(field);
  for (std::size_t p = 0; p < n_points; ++p) {
    const Point x = uniform_in_ball(rng, field.dim, radius);
    const double a = field(x);
    const double b = field(-x);
    if (std::abs(a - b) > 1e-7 * std::max(1.0, std::abs(a))) {
      c.passed = false;
      c.witness = x;
      c.image = -x;
      c.detail = "f(x)=" + fmt(a) + " but f(-x)=" + fmt(b);
      return c;
    }
  }
  return c;
}

double TiltedMeasure::density(const Point& x) const {
  const auto d = static_cast<double>(x.size());
  const Matrix inv = sigma.inverse();
  const double q = x.dot(inv * x);
  const double gauss = std::exp(-0.5 * q) / (std::pow(2.0 * std::numbers::pi, 0.5 * d) * std::sqrt(sigma.determinant()));
  return tilt(inv_sqrt * x) * gauss / normalizer;
}

TiltedMeasure tilted_measure(const ScalarField& tilt, const Matrix& sigma, std::size_t n, std::uint64_t seed) {
  require_spd(sigma);
  const auto d = static_cast<int>(sigma.rows());
  if (tilt.dim != static_cast<std::size_t>(d)) throw DimensionError(static_cast<std::size_t>(d), tilt.dim);
  TiltedMeasure m;
  m.sigma = sigma;
  m.inv_sqrt = symmetric_roots(sigma).inv_sqrt;
  m.tilt = tilt;
  const MeasureEstimate c = mc_integral(gaussian(d), tilt, n, seed);
  if (!(c.value > 0.0)) throw std::invalid_argument("tilt has zero Gaussian mass");
  m.normalizer = c.value;
  m.normalizer_se = c.std_error;
  return m;
}

QuadraticProfile exp_profile(double rate) {
  std::ostringstream os;
  os.precision(17);
  os << "exp(-" << rate << " t)";
  return {[rate](double t) { return std::exp(-rate * t); }, os.str()};
}

QuadraticProfile constant_profile(double value) {
  std::ostringstream os;
  os.precision(17);
  os << "constant(" << value << ")";
  return {[value](double) { return value; }, os.str()};
}

QuadraticProfile power_profile(double power) {
  std::ostringstream os;
  os.precision(17);
  os << "t^" << power;
  return {[power](double t) { return std::pow(t, power); }, os.str()};
}

QuadraticProfile grid_profile(const GridFunction& g) {
  const double edge = g.back();
  const double last = g(edge);
  return {[g, edge, last](double t) { return t >= edge ? last : g(t); }, "grid(" + std::to_string(g.nodes().size()) + " nodes)"};
}

double phi_n_eval(double t, int n) {
  if (n < 1) throw std::invalid_argument("phi_n index must be positive");
  if (t <= 1.0) return 1.0;
  const double v = 1.0 - static_cast<double>(n) * (t - 1.0);
  return v > 0.0 ? v : 0.0;
}

QuadraticProfile phi_n_profile(int n) {
  if (n < 1) throw std::invalid_argument("phi_n index must be positive");
  return {[n](double t) { return phi_n_eval(t, n); }, "phi_" + std::to_string(n)};
}

CheckReport nonincreasing_check(const QuadraticProfile& phi, double t_max, std::size_t points) {
  CheckReport c = check("phi_nonincreasing", true, "", points);
  double previous = phi(0.0);
  for (std::size_t k = 1; k < points; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
    const double v = phi(t);
    if (v > previous + 1e-12 * std::max(1.0, std::abs(previous))) {
      c.passed = false;
      c.witness = Point::Constant(1, t);
      c.detail = "phi rises to " + fmt(v) + " at t=" + fmt(t);
      return c;
    }
    previous = v;
  }
  return c;
}

VerificationReport verify_theorem_4_1(const ScalarField& f, const Matrix& sigma, const QuadraticProfile& phi,
                                      const Budgets& budgets, std::uint64_t seed) {
  require_spd(sigma);
  const auto d = static_cast<std::size_t>(sigma.rows());
  if (f.dim != d) throw DimensionError(d, f.dim);
  const SymmetricRoots roots = symmetric_roots(sigma);
  const double top = Eigen::SelfAdjointEigenSolver<Matrix>(sigma).eigenvalues().maxCoeff();
  const RadialDensity gamma = gaussian(static_cast<int>(d));
  const double t_max = top * gamma.truncation_radius() * gamma.truncation_radius();

  VerificationReport r;
  r.theorem = "4.1";
  r.instance = f.description + " | phi=" + phi.description + " | d=" + std::to_string(d);
  r.hypotheses = {logconcavity_check(f, budgets.hypothesis_samples, seed),
                  symmetry_check(f, budgets.hypothesis_samples, seed), nonincreasing_check(phi, t_max)};

  const Matrix& s_half = roots.sqrt;
  const Matrix& s_inv_half = roots.inv_sqrt;
  const Moments m = accumulate(
      Measure(gamma), {seed, budgets.samples}, 6,
      [&](const Point& x, std::span<double> out) {
        const double fx = f(x);
        const double px = phi(x.dot(sigma * x));
        out[0] = fx * px;
        out[1] = fx;
        out[2] = px;
        // Same draw seen as y = sqrt(Sigma) x ~ N(0, Sigma).
        const Point y = s_half * x;
        const double fy = f(s_inv_half * y);
        const double py = phi(y.squaredNorm());
        out[3] = fy * py;
        out[4] = fy;
        out[5] = py;
      },
      budgets.exec, {{0, 1, 2}, {3, 4, 5}});

  r.lhs = {"int f phi(<Sigma x,x>) dgamma", m.mean(0), m.std_error(0), "mc"};
  r.rhs = {"int f dgamma * int phi(<Sigma x,x>) dgamma", m.mean(1) * m.mean(2),
           std::hypot(m.mean(2) * m.std_error(1), m.mean(1) * m.std_error(2)), "mc"};
  r.gap = covariance_gap(m, 0, 1, 2);
  r.details.push_back({"int f dgamma", m.mean(1), m.std_error(1), "mc"});
  r.details.push_back({"int phi dgamma", m.mean(2), m.std_error(2), "mc"});
  const GapEstimate reduced = ratio_gap(m, 3, 4, 5);
  r.details.push_back({"reduced_gap", reduced.value, reduced.std_error, "mc_reweighted"});
  r.details.push_back({"reduced_lhs", m.mean(3) / m.mean(4), 0.0, "mc_reweighted"});
  r.details.push_back({"reduced_rhs", m.mean(5), m.std_error(5), "mc_reweighted"});
  r.details.push_back({"normalizer", m.mean(4), m.std_error(4), "mc_reweighted"});
  r.provenance.methods = {"mc", "mc_reweighted"};

  if (d == 1) {
    // The one-dimensional map behind the reduction, from N(0, s) to mu_f.
    const double sd = std::sqrt(sigma(0, 0));
    const double inv = s_inv_half(0, 0);
    try {
      const auto map = monotone_map(normal_density(sd), tilted_normal(sd, [&f, inv](double t) {
                                      Point p(1);
                                      p[0] = inv * t;
                                      return f(p);
                                    }, f.description));
      const ContractionResult c = contraction_check(map);
      const OddnessResult o = oddness_check(map);
      r.details.push_back({"transport_max_increment_ratio", c.max_increment_ratio, 0.0, "monotone_rearrangement"});
      r.details.push_back({"transport_oddness_defect", o.max_defect, 0.0, "monotone_rearrangement"});
      r.diagnostics.push_back(check("transport_contraction", c.passed, "ratio " + fmt(c.max_increment_ratio)));
      r.diagnostics.push_back(check("transport_oddness", o.passed, "defect " + fmt(o.max_defect)));
      r.provenance.methods.push_back("monotone_rearrangement");
    } catch (const std::exception& e) {
      r.diagnostics.push_back(check("transport_contraction", false, std::string("map unavailable: ") + e.what()));
    }
  }
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

VerificationReport verify_corollary(const ConvexBody& a, const Matrix& sigma, const Budgets& budgets, std::uint64_t seed,
                                    const std::vector<int>& ladder_in) {
  require_spd(sigma);
  const std::size_t d = a.dim();
  if (static_cast<std::size_t>(sigma.rows()) != d) throw DimensionError(d, static_cast<std::size_t>(sigma.rows()));
  VerificationReport r;
  r.theorem = "corollary";
  r.instance = a.kind() + " | ellipsoid <Sigma x,x> <= 1 | gaussian d=" + std::to_string(d);
  CheckReport bounded = check("bounded", true, "");
  try {
    bounded.detail = "bounding radius " + fmt(bounding_radius(a));
  } catch (const UnboundedBodyError& e) {
    bounded.passed = false;
    bounded.detail = e.what();
  }
  CheckReport convex = check("convex", a.kind() != "generalized_ball", a.kind());
  r.hypotheses = {symmetric_body_check(a, budgets.hypothesis_samples, seed ^ 0x9e3779b97f4a7c15ULL), convex, bounded};

  std::vector<int> ladder = r.hypotheses_hold() ? ladder_in : std::vector<int>{};
  std::sort(ladder.begin(), ladder.end());
  const std::size_t L = ladder.size();
  const double reach = L > 0 ? 1.0 / static_cast<double>(ladder.front()) : 0.0;
  const std::size_t pairs = L * L;
  std::vector<std::vector<std::size_t>> groups{{0, 1, 2}};
  for (std::size_t p = 0; p < pairs; ++p) groups.push_back({3 + 3 * p, 4 + 3 * p, 5 + 3 * p});
  const std::size_t excess0 = 3 + 3 * pairs;
  for (std::size_t j = 0; j < 2 * L; ++j) groups.push_back({excess0 + j});

  const Moments m = accumulate(
      Measure(gaussian(static_cast<int>(d))), {seed, budgets.samples}, excess0 + 2 * L,
      [&](const Point& x, std::span<double> out) {
        const double in_a = contains(a, x) ? 1.0 : 0.0;
        const double q = x.dot(sigma * x);
        const double in_b = q <= 1.0 ? 1.0 : 0.0;
        out[0] = in_a * in_b;
        out[1] = in_a;
        out[2] = in_b;
        if (L == 0) return;
        double dist = 0.0;
        if (in_a == 0.0) {
          dist = distance_lower_bound(a, x);
          if (dist < reach) dist = distance(a, x);
        }
        for (std::size_t i = 0; i < L; ++i) {
          const double fm = FnApproximant::from_distance(dist, ladder[i]);
          for (std::size_t j = 0; j < L; ++j) {
            const double pn = phi_n_eval(q, ladder[j]);
            const std::size_t p = i * L + j;
            out[3 + 3 * p] = fm * pn;
            out[4 + 3 * p] = fm;
            out[5 + 3 * p] = pn;
          }
          out[excess0 + i] = fm - in_a;
        }
        for (std::size_t j = 0; j < L; ++j) out[excess0 + L + j] = phi_n_eval(q, ladder[j]) - in_b;
      },
      budgets.exec, groups);

  r.lhs = {"gamma(A n B)", m.mean(0), m.std_error(0), "mc"};
  r.rhs = {"gamma(A) gamma(B)", m.mean(1) * m.mean(2), std::hypot(m.mean(2) * m.std_error(1), m.mean(1) * m.std_error(2)),
           "mc"};
  r.gap = covariance_gap(m, 0, 1, 2);
  r.details.push_back({"gamma(A)", m.mean(1), m.std_error(1), "mc"});
  r.details.push_back({"gamma(B)", m.mean(2), m.std_error(2), "mc"});
  r.provenance.methods = {"mc"};

  if (L > 0) {
    CheckReport trend = check("approximation_excess_decreasing", true, "", budgets.samples);
    CheckReport not_violated = check("approximation_gaps_not_violated", true, "", budgets.samples);
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j) {
        const std::size_t p = i * L + j;
        const GapEstimate g = covariance_gap(m, 3 + 3 * p, 4 + 3 * p, 5 + 3 * p);
        const std::string tag = "f_" + std::to_string(ladder[i]) + "/phi_" + std::to_string(ladder[j]);
        r.details.push_back({tag + "_gap", g.value, g.std_error, "mc"});
        if (classify(g, true) == Verdict::violated) {
          not_violated.passed = false;
          not_violated.detail = tag + " gap below -5 se";
        }
      }
    for (std::size_t side = 0; side < 2; ++side) {
      double previous = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < L; ++i) {
        const std::size_t idx = excess0 + side * L + i;
        const std::string tag = (side == 0 ? "f_" : "phi_") + std::to_string(ladder[i]) + "_mass_excess";
        r.details.push_back({tag, m.mean(idx), m.std_error(idx), "mc"});
        if (m.mean(idx) > previous) {
          trend.passed = false;
          trend.detail = tag + " grew";
        }
        previous = m.mean(idx);
      }
    }
    r.diagnostics.push_back(trend);
    r.diagnostics.push_back(not_violated);
    const ScalarField top = fn_field(a, ladder.back());
    CheckReport lc = logconcavity_check(top, budgets.hypothesis_samples, seed);
    lc.name = "f_" + std::to_string(ladder.back()) + ":" + lc.name;
    r.diagnostics.push_back(lc);
    r.provenance.methods.push_back("fn_phi_n_ladder");
  }
  r.provenance.seed = seed;
  r.provenance.samples = budgets.samples;
  r.decide();
  return r;
}

}  // namespace gci
