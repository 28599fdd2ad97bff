#pragma once

#include "gci/convex_body.hpp"
#include "gci/mc_kernel.hpp"
#include "gci/measures.hpp"
#include "gci/moments.hpp"
#include "gci/scalar_field.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gci {

/// mu(f) by plain Monte Carlo; std_error = sd / sqrt(n).
MeasureEstimate mc_integral(const Measure& measure, const ScalarField& field, std::size_t n, std::uint64_t seed,
                            Execution exec = Execution::parallel);

/// Common-random-number estimates of mu(f g), mu(f), mu(g) and of the gap
/// mu(f g) - mu(f) mu(g) with its delta-method standard error.
struct JointEstimate {
  MeasureEstimate joint;
  MeasureEstimate first;
  MeasureEstimate second;
  GapEstimate gap;
};

JointEstimate mc_correlation(const Measure& measure, const ScalarField& f, const ScalarField& g, std::size_t n,
                             std::uint64_t seed, Execution exec = Execution::parallel);

/// mu(A n B), mu(A), mu(B) from one sample stream.
JointEstimate mc_joint(const Measure& measure, const ConvexBody& a, const ConvexBody& b, std::size_t n,
                       std::uint64_t seed, Execution exec = Execution::parallel);

/// Normalised average of f(t theta) over the unit sphere. d = 1 exact,
/// d = 2 periodic midpoint rule with m_dirs angles, d >= 3 Monte Carlo.
/// Radial fields are averaged exactly in every dimension.
MeasureEstimate sphere_average(const ScalarField& field, double t, std::size_t m_dirs, std::uint64_t seed);

/// Phi'(t) = rho(t) t^{d-1} sigma(S^{d-1}) (avg_{S^{d-1}} f(t .) - mu(f)),
/// with mu(f) supplied by the caller.
MeasureEstimate phi_derivative(const ScalarField& field, const RadialDensity& measure, double t, std::size_t m_dirs,
                               double mu_f, std::uint64_t seed);

/// int_{B_t} f dmu in spherical coordinates: composite Gauss-Legendre in r
/// times the deterministic sphere average. Requires d <= 2.
MeasureEstimate radial_integral(const ScalarField& field, const RadialDensity& measure, double t, std::size_t m_dirs);

/// radial_integral at every point of an increasing grid, in one pass.
std::vector<double> radial_cumulative(const ScalarField& field, const RadialDensity& measure, const std::vector<double>& t,
                                      std::size_t m_dirs);

/// mu(f) over the whole space via radial_integral.
MeasureEstimate radial_total(const ScalarField& field, const RadialDensity& measure, std::size_t m_dirs);

/// mu(B) for a coordinate-separable body (ball, ellipsoid, generalized
/// ball) under a product law: nested Gauss-Legendre slicing, last
/// coordinate outermost. `discretization` holds |I(2N) - I(N)|. d <= 4.
MeasureEstimate sliced_measure(const ProductDensity& measure, const ConvexBody& body, std::size_t nodes_per_level = 64);

/// mu_{(d-1)} of the slice of a separable body at x_axis = value.
double slice_mass(const ProductDensity& measure, const ConvexBody& body, std::size_t axis, double value,
                  std::size_t nodes_per_level = 64);

/// Midpoint rule on a uniform cells x cells grid over the truncation box,
/// shrunk to the field's support box (or support radius) when known, or to
/// the explicit `box`. Test oracle only.
MeasureEstimate grid_oracle_2d(const Measure& measure, const ScalarField& field, std::size_t cells,
                               std::optional<AxisBox> box = std::nullopt);

/// Gauss-Legendre rule mapped to [0, 1]; n in {8, 16, 32, 64, 128, 256}.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const QuadratureRule& gauss_legendre_unit(std::size_t n);

}  // namespace gci
