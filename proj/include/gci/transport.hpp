#pragma once

#include "gci/correlation.hpp"
#include "gci/linalg.hpp"
#include "gci/report.hpp"
#include "gci/scalar_field.hpp"
#include "gci/tabulated.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gci {

/// Unnormalised density on [lo, hi].
struct Density1D {
  std::function<double(double)> density;
  double lo = 0.0;
  double hi = 0.0;
  std::string description;
};

/// N(0, sigma^2) on [-12 sigma, 12 sigma].
Density1D normal_density(double sigma);

/// N(0, sigma^2) reweighted by `tilt`, on the same window.
Density1D tilted_normal(double sigma, std::function<double(double)> tilt, std::string tilt_description);

/// Nodes of the tables behind a transport map.
inline constexpr std::size_t kTransportNodes = (1u << 18) + 1;

/// Monotone rearrangement T = F_target^{-1} o F_source sampled on a grid
/// symmetric about 0.
struct TransportMap1D {
  std::vector<double> x;
  std::vector<double> y;
  std::shared_ptr<const Tabulated1D> source;
  std::shared_ptr<const Tabulated1D> target;
  std::string description;

  /// Linear interpolation between grid values; the table inverse outside.
  double operator()(double t) const;
  /// max |F_target(T(x)) - F_source(x)| over the grid.
  double push_forward_error() const;
};

/// `points` odd, so the grid contains 0. The grid spans the source's
/// central 1 - 2 tail mass.
TransportMap1D monotone_map(const Density1D& source, const Density1D& target, std::size_t points = 2001,
                            double tail = 1e-7);

struct ContractionResult {
  double max_increment_ratio = 0.0;
  /// max over the grid of |T(x)| - |x|.
  double max_norm_excess = 0.0;
  bool passed = false;
};

inline constexpr double kContractionTol = 1e-6;

/// Passed iff every grid increment ratio is <= 1 + 1e-6 and, when
/// `symmetric` is set, |T(x)| <= |x| + 1e-6.
ContractionResult contraction_check(const TransportMap1D& map, bool symmetric = true);

struct OddnessResult {
  double max_defect = 0.0;  // max |T(-x) + T(x)|
  bool passed = false;
};

OddnessResult oddness_check(const TransportMap1D& map, double tol = 1e-6);

/// Two columns x,T(x) with a header line.
std::string to_csv(const TransportMap1D& map);

/// f(lambda x + (1 - lambda) y) >= f(x)^lambda f(y)^(1 - lambda) on random
/// pairs drawn from the support ball (radius 5 when the support is unknown).
CheckReport logconcavity_check(const ScalarField& field, std::size_t n_pairs, std::uint64_t seed);

/// f(-x) == f(x) on random points.
CheckReport symmetry_check(const ScalarField& field, std::size_t n_points, std::uint64_t seed);

/// d mu_f = f(sqrt(Sigma^{-1}) x) d N(0, Sigma)(x) / C_f.
struct TiltedMeasure {
  Matrix sigma;
  Matrix inv_sqrt;
  ScalarField tilt;
  double normalizer = 0.0;
  double normalizer_se = 0.0;

  double density(const Point& x) const;
};

/// C_f estimated as E f(X), X standard Gaussian.
TiltedMeasure tilted_measure(const ScalarField& tilt, const Matrix& sigma, std::size_t n, std::uint64_t seed);

/// A real function on [0, inf) applied to <Sigma x, x>.
struct QuadraticProfile {
  std::function<double(double)> eval;
  std::string description;

  double operator()(double t) const { return eval(t); }
};

QuadraticProfile exp_profile(double rate);
QuadraticProfile constant_profile(double value);
QuadraticProfile power_profile(double power);
QuadraticProfile grid_profile(const GridFunction& g);
/// phi_n(t) = 1 on [0, 1], 1 - n (t - 1) on (1, 1 + 1/n), 0 beyond.
double phi_n_eval(double t, int n);
QuadraticProfile phi_n_profile(int n);

/// Monotonicity of phi on [0, t_max], checked on a fine grid.
CheckReport nonincreasing_check(const QuadraticProfile& phi, double t_max, std::size_t points = 4097);

/// int f phi(<Sigma x, x>) d gamma_d >= int f d gamma_d int phi(<Sigma x, x>) d gamma_d.
/// Also reports the reduced inequality int phi(|y|^2) d mu_f >= int phi(|y|^2) d mu
/// from the same samples, through y = sqrt(Sigma) x.
VerificationReport verify_theorem_4_1(const ScalarField& f, const Matrix& sigma, const QuadraticProfile& phi,
                                      const Budgets& budgets, std::uint64_t seed);

/// gamma_d(A n B) >= gamma_d(A) gamma_d(B) for symmetric convex A and
/// B = {<Sigma x, x> <= 1}, with the (f_m, phi_n) ladder m, n in `ladder`.
VerificationReport verify_corollary(const ConvexBody& a, const Matrix& sigma, const Budgets& budgets, std::uint64_t seed,
                                    const std::vector<int>& ladder = {4, 16, 64});

}  // namespace gci
