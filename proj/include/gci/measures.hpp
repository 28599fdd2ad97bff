#pragma once

#include "gci/linalg.hpp"
#include "gci/monotone_grid.hpp"
#include "gci/rng.hpp"
#include "gci/tabulated.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gci {

/// Truncated tail mass allowed when choosing a support radius.
inline constexpr double kTailEps = 1e-10;

/// Unnormalised profile rho on R_+.
struct Profile {
  enum class Kind { gaussian, exponential_power, grid };

  Kind kind = Kind::gaussian;
  double scale = 1.0;  // gaussian: standard deviation; exponential_power: scale s
  double power = 2.0;  // exponential_power: exp(-(r/s)^power)
  std::shared_ptr<const GridFunction> grid;

  static Profile gaussian(double sigma = 1.0);
  static Profile exponential_power(double scale, double power);
  /// Positive values on a grid starting at 0; the last node is the support edge.
  static Profile from_grid(std::vector<double> t, std::vector<double> rho);

  double operator()(double r) const;
  std::string describe() const;
};

/// Rotationally invariant law d mu = rho(|x|) dx on R^d.
class RadialDensity {
 public:
  RadialDensity(int dim, Profile profile, std::optional<double> truncation_radius = std::nullopt);

  int dim() const { return dim_; }
  const Profile& profile() const { return profile_; }
  double truncation_radius() const { return r_max_; }

  /// Normalised rho(r).
  double rho(double r) const { return norm_ * profile_(r); }
  double density(const Point& x) const { return rho(x.norm()); }

  /// sigma(S^{d-1}) * int_0^R rho(r) r^{d-1} dr by the tabulation quadrature.
  double total_mass() const { return total_mass_; }

  /// mu(B_t), deterministic.
  double ball_mass(double t) const { return radial_->cdf(t); }

  /// Law of |X|.
  const Tabulated1D& radial_law() const { return *radial_; }

  /// Direction from normalised Gaussians, radius by inverse CDF.
  void sample(RandomStream& rng, Point& out) const;

  bool is_standard_gaussian() const { return standard_gaussian_; }

 private:
  int dim_;
  Profile profile_;
  double r_max_ = 0.0;
  double norm_ = 1.0;
  double total_mass_ = 0.0;
  bool standard_gaussian_ = false;
  std::shared_ptr<const Tabulated1D> radial_;
};

/// Symmetric one-dimensional law rho(|x|) dx on [-L, L].
class Marginal {
 public:
  Marginal(Profile profile, std::optional<double> half_width = std::nullopt);

  const Profile& profile() const { return profile_; }
  double half_width() const { return half_width_; }
  double rho(double x) const { return norm_ * profile_(std::abs(x)); }
  double total_mass() const { return total_mass_; }
  double cdf(double x) const { return table_->cdf(x); }
  double quantile(double p) const { return table_->quantile(p); }
  /// mu([-w, w]).
  double interval_mass(double w) const;
  const Tabulated1D& table() const { return *table_; }

 private:
  Profile profile_;
  double half_width_ = 0.0;
  double norm_ = 1.0;
  double total_mass_ = 0.0;
  std::shared_ptr<const Tabulated1D> table_;
};

/// Product law prod rho_i(|x_i|) dx_i.
class ProductDensity {
 public:
  explicit ProductDensity(std::vector<Marginal> marginals);

  int dim() const { return static_cast<int>(marginals_.size()); }
  const Marginal& marginal(std::size_t i) const { return marginals_.at(i); }
  const std::vector<Marginal>& marginals() const { return marginals_; }
  double density(const Point& x) const;
  double truncation_radius() const;
  void sample(RandomStream& rng, Point& out) const;

 private:
  std::vector<Marginal> marginals_;
};

/// Standard Gaussian gamma_d as a radial law.
RadialDensity gaussian(int d);
/// Standard Gaussian gamma_d as a product of d standard normals.
ProductDensity gaussian_product(int d);

using Measure = std::variant<RadialDensity, ProductDensity>;

int dim(const Measure& m);
double density(const Measure& m, const Point& x);
double truncation_radius(const Measure& m);
/// Half-width of the box [-L, L]^d that carries the measure up to truncation.
double truncation_half_width(const Measure& m);
void draw(const Measure& m, RandomStream& rng, Point& out);
std::string describe(const Measure& m);

/// Sample-stream partition shared by every Monte Carlo routine: block k of
/// `block_size` draws uses substream (seed, k).
inline constexpr std::size_t kBlockSize = 8192;

/// i.i.d. draws in block order.
std::vector<Point> sample(const Measure& m, std::size_t n, std::uint64_t seed);

/// Value produced by any estimator, tagged with how it was obtained.
struct MeasureEstimate {
  enum class Method { mc, radial_quadrature, nested_quadrature, grid_oracle };

  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  Method method = Method::mc;
  /// Deterministic error indicator (grid refinement difference); 0 for MC.
  double discretization = 0.0;

  bool deterministic() const { return method != Method::mc; }
};

std::string to_string(MeasureEstimate::Method m);

}  // namespace gci
