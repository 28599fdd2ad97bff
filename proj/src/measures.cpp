#include "gci/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gci {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Support edge used for the standard Gaussian in every dimension we handle.
constexpr double kGaussianRadius = 12.0;

// Smallest radius R with int_R^inf w(r) dr < kTailEps * int_0^inf w(r) dr,
// scanning the tabulation of w over a generous range.
double tail_radius(const std::function<double(double)>& weight, double search_hi) {
  const Tabulated1D probe(weight, 0.0, search_hi);
  const auto cdf = probe.cdf_nodes();
  for (std::size_t i = 0; i < cdf.size(); ++i)
    if (1.0 - cdf[i] < kTailEps) return std::max(probe.node(i), probe.step());
  return search_hi;
}

double profile_search_radius(const Profile& p) {
  switch (p.kind) {
    case Profile::Kind::gaussian:
      return p.scale * 40.0;
    case Profile::Kind::exponential_power:
      return p.scale * std::pow(745.0, 1.0 / p.power);
    case Profile::Kind::grid:
      return p.grid->back();
  }
  return 1.0;
}

}  // namespace

Profile Profile::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian scale must be positive");
  return Profile{Kind::gaussian, sigma, 2.0, nullptr};
}

Profile Profile::exponential_power(double scale, double power) {
  if (!(scale > 0.0) || !(power > 0.0)) throw std::invalid_argument("exponential-power parameters must be positive");
  return Profile{Kind::exponential_power, scale, power, nullptr};
}

Profile Profile::from_grid(std::vector<double> t, std::vector<double> rho) {
  if (t.empty() || t.front() != 0.0) throw std::invalid_argument("profile grid must start at 0");
  for (double v : rho)
    if (!(v > 0.0)) throw std::invalid_argument("profile grid values must be strictly positive");
  return Profile{Kind::grid, 1.0, 2.0, std::make_shared<const GridFunction>(std::move(t), std::move(rho))};
}

double Profile::operator()(double r) const {
  switch (kind) {
    case Kind::gaussian:
      return std::exp(-0.5 * (r / scale) * (r / scale));
    case Kind::exponential_power:
      return std::exp(-std::pow(r / scale, power));
    case Kind::grid:
      return r > grid->back() ? 0.0 : (*grid)(r);
  }
  return 0.0;
}

std::string Profile::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::gaussian:
      os << "gaussian(sigma=" << scale << ")";
      break;
    case Kind::exponential_power:
      os << "exponential_power(scale=" << scale << ",power=" << power << ")";
      break;
    case Kind::grid:
      os << "grid(" << grid->nodes().size() << " nodes)";
      break;
  }
  return os.str();
}

RadialDensity::RadialDensity(int dim, Profile profile, std::optional<double> truncation_radius)
    : dim_(dim), profile_(std::move(profile)) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  const double d1 = static_cast<double>(dim - 1);
  auto shell = [this, d1](double r) { return profile_(r) * std::pow(r, d1); };
  standard_gaussian_ = profile_.kind == Profile::Kind::gaussian && profile_.scale == 1.0;
  if (truncation_radius) {
    r_max_ = *truncation_radius;
  } else if (standard_gaussian_ && dim <= 10) {
    r_max_ = kGaussianRadius;
  } else {
    r_max_ = tail_radius(shell, profile_search_radius(profile_));
  }
  if (!(r_max_ > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  radial_ = std::make_shared<const Tabulated1D>(shell, 0.0, r_max_);
  const double area = sphere_area(dim);
  if (standard_gaussian_) {
    norm_ = std::pow(2.0 * std::numbers::pi, -0.5 * dim);
  } else {
    norm_ = 1.0 / (area * radial_->raw_mass());
  }
  total_mass_ = area * norm_ * radial_->raw_mass();
}

void RadialDensity::sample(RandomStream& rng, Point& out) const {
  out.resize(dim_);
  double sq = 0.0;
  do {
    for (auto& v : out) v = rng.normal();
    sq = out.squaredNorm();
  } while (sq == 0.0);
  const double r = radial_->quantile(rng.uniform());
  out *= r / std::sqrt(sq);
}

Marginal::Marginal(Profile profile, std::optional<double> half_width) : profile_(std::move(profile)) {
  auto rho = [this](double x) { return profile_(std::abs(x)); };
  if (half_width) {
    half_width_ = *half_width;
  } else if (profile_.kind == Profile::Kind::gaussian) {
    half_width_ = kGaussianRadius * profile_.scale;
  } else {
    half_width_ = tail_radius([this](double r) { return profile_(r); }, profile_search_radius(profile_));
  }
  if (!(half_width_ > 0.0)) throw std::invalid_argument("marginal half-width must be positive");
  table_ = std::make_shared<const Tabulated1D>(rho, -half_width_, half_width_);
  if (profile_.kind == Profile::Kind::gaussian) {
    norm_ = 1.0 / (profile_.scale * std::sqrt(2.0 * std::numbers::pi));
  } else {
    norm_ = 1.0 / table_->raw_mass();
  }
  total_mass_ = norm_ * table_->raw_mass();
}

double Marginal::interval_mass(double w) const {
  if (w <= 0.0) return 0.0;
  return table_->cdf(w) - table_->cdf(-w);
}

ProductDensity::ProductDensity(std::vector<Marginal> marginals) : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw std::invalid_argument("product measure needs at least one marginal");
}

double ProductDensity::density(const Point& x) const {
  require_dim(x, marginals_.size());
  double p = 1.0;
  for (std::size_t i = 0; i < marginals_.size(); ++i) p *= marginals_[i].rho(x[static_cast<Eigen::Index>(i)]);
  return p;
}

double ProductDensity::truncation_radius() const {
  double sq = 0.0;
  for (const auto& m : marginals_) sq += m.half_width() * m.half_width();
  return std::sqrt(sq);
}

void ProductDensity::sample(RandomStream& rng, Point& out) const {
  out.resize(static_cast<Eigen::Index>(marginals_.size()));
  for (std::size_t i = 0; i < marginals_.size(); ++i) out[static_cast<Eigen::Index>(i)] = marginals_[i].quantile(rng.uniform());
}

RadialDensity gaussian(int d) { return RadialDensity(d, Profile::gaussian()); }

ProductDensity gaussian_product(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  return ProductDensity(std::vector<Marginal>(static_cast<std::size_t>(d), Marginal(Profile::gaussian())));
}

int dim(const Measure& m) {
  return std::visit([](const auto& v) { return v.dim(); }, m);
}

double density(const Measure& m, const Point& x) {
  return std::visit([&](const auto& v) { return v.density(x); }, m);
}

double truncation_radius(const Measure& m) {
  return std::visit([](const auto& v) { return v.truncation_radius(); }, m);
}

double truncation_half_width(const Measure& m) {
  return std::visit(overloaded{
                        [](const RadialDensity& r) { return r.truncation_radius(); },
                        [](const ProductDensity& p) {
                          double w = 0.0;
                          for (const auto& mg : p.marginals()) w = std::max(w, mg.half_width());
                          return w;
                        },
                    },
                    m);
}

void draw(const Measure& m, RandomStream& rng, Point& out) {
  std::visit([&](const auto& v) { v.sample(rng, out); }, m);
}

std::string describe(const Measure& m) {
  return std::visit(overloaded{
                        [](const RadialDensity& r) { return "radial(d=" + std::to_string(r.dim()) + "," + r.profile().describe() + ")"; },
                        [](const ProductDensity& p) {
                          std::string s = "product(";
                          for (std::size_t i = 0; i < p.marginals().size(); ++i) {
                            if (i) s += ",";
                            s += p.marginal(i).profile().describe();
                          }
                          return s + ")";
                        },
                    },
                    m);
}

std::vector<Point> sample(const Measure& m, std::size_t n, std::uint64_t seed) {
  std::vector<Point> out(n);
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  for (std::size_t b = 0; b < blocks; ++b) {
    RandomStream rng(seed, b);
    const std::size_t end = std::min(n, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) draw(m, rng, out[i]);
  }
  return out;
}

std::string to_string(MeasureEstimate::Method m) {
  switch (m) {
    case MeasureEstimate::Method::mc:
      return "mc";
    case MeasureEstimate::Method::radial_quadrature:
      return "radial-quadrature";
    case MeasureEstimate::Method::nested_quadrature:
      return "nested-quadrature";
    case MeasureEstimate::Method::grid_oracle:
      return "grid-oracle";
  }
  return "unknown";
}

}  // namespace gci
