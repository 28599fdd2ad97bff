#pragma once

#include "gci/convex_body.hpp"
#include "gci/integration.hpp"
#include "gci/measures.hpp"
#include "gci/report.hpp"
#include "gci/scalar_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gci {

/// Sample budgets shared by the verifiers.
struct Budgets {
  std::size_t samples = 1'000'000;
  std::size_t directions = 256;
  std::size_t t_steps = 33;
  /// Points per probabilistic hypothesis check.
  std::size_t hypothesis_samples = 2000;
  /// Indices n of the f_n approximants evaluated alongside the indicator;
  /// empty skips the approximation route.
  std::vector<int> ladder = {2, 4, 8, 16, 32};
  Execution exec = Execution::parallel;
};

/// f_n(x) = 1 - n min(1/n, dist(x, A)).
class FnApproximant {
 public:
  FnApproximant(ConvexBody body, int n);

  double operator()(const Point& x) const;
  static double from_distance(double dist, int n);

  const ConvexBody& body() const { return body_; }
  int n() const { return n_; }

 private:
  ConvexBody body_;
  int n_;
};

ScalarField fn_field(const ConvexBody& body, int n);

bool all_passed(const std::vector<CheckReport>& checks);

/// Membership of the class C_d: maximum at the origin, convex superlevel
/// sets, decrease along rays and f(0) > mu(f) - 3 SE. Each check stops at
/// its first counterexample.
std::vector<CheckReport> check_class_Cd(const ScalarField& field, const Measure& measure, std::size_t n_rays,
                                        std::size_t n_levels, std::uint64_t seed, std::size_t mc_samples = 20000);

/// Membership of the class C-bar_d: every axis-parallel restriction lies in
/// C_1 (maximum at the foot on the hyperplane, decreasing away from it).
std::vector<CheckReport> check_class_Cbar_d(const ScalarField& field, const Measure& measure, std::size_t n_lines,
                                            std::size_t n_levels, std::uint64_t seed);

struct PhiProfile {
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<double> phi_se;
  std::vector<double> dphi;
  /// Pointwise tolerance on dphi: 3 SE on Monte Carlo paths, refinement
  /// difference on the deterministic path.
  std::vector<double> dphi_tol;
  std::optional<double> t1;
  bool unimodal = true;
  double mu_f = 0.0;
  MeasureEstimate::Method method = MeasureEstimate::Method::radial_quadrature;
  std::string detail;
};

/// Phi(t) = mu(f 1_{B_t}) - mu(f) mu(B_t) and Phi'(t) on t_grid.
/// Deterministic for d <= 2 or radial f; Monte Carlo with n samples otherwise.
PhiProfile phi_profile(const ScalarField& field, const RadialDensity& measure, const std::vector<double>& t_grid,
                       std::size_t n, std::size_t m_dirs, std::uint64_t seed, Execution exec = Execution::parallel);

/// Evenly spaced grid of `steps` points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

/// Finite weighted point set on the line.
struct DiscreteMeasure {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Trapezoid weights of a density tabulated on a grid, normalised to one.
DiscreteMeasure trapezoid_measure(const std::vector<double>& t, const std::vector<double>& density);

struct FkgResult {
  double lhs = 0.0;  // int f g dnu
  double rhs = 0.0;  // int f dnu * int g dnu
  double gap = 0.0;
  /// sum_ij (f_i - f_j)(g_i - g_j) nu_i nu_j = 2 gap, when the grid is small enough.
  std::optional<double> double_sum;
};

/// Largest grid for which the O(N^2) double-sum cross-check runs.
inline constexpr std::size_t kFkgDoubleSumLimit = 2048;

/// f and g are values at nu.points and must be monotone in the same
/// direction; otherwise std::invalid_argument("comonotonicity required").
FkgResult fkg_check(const DiscreteMeasure& nu, const std::vector<double>& f, const std::vector<double>& g);

struct SliceProfile {
  std::vector<double> x;
  std::vector<double> positive;  // s(x)
  std::vector<double> negative;  // s(-x)
  CheckReport report;
};

/// s(x) = mass of the slice {x_axis = x} of a separable body, on the
/// nonnegative grid `x`: checks evenness and decrease.
SliceProfile slice_monotonicity_check(const ProductDensity& measure, const ConvexBody& body, std::size_t axis,
                                      const std::vector<double>& x, double tol = 1e-8);

/// mu(f 1_B) >= mu(f) mu(B) for f in C_d and B = Ball{r}.
VerificationReport verify_theorem_2_1(const ScalarField& field, const RadialDensity& measure, double ball_radius,
                                      const Budgets& budgets, std::uint64_t seed);

/// mu(A n B) >= mu(A) mu(B) for convex A containing the origin and B = Ball{r},
/// directly and through the f_n ladder.
VerificationReport verify_theorem_1_1(const ConvexBody& a, const RadialDensity& measure, double ball_radius,
                                      const Budgets& budgets, std::uint64_t seed);

/// mu(A n B) >= mu(A) mu(B) for projection-closed convex A, separable B and a
/// product measure.
VerificationReport verify_theorem_1_2(const ConvexBody& a, const ProductDensity& measure, const ConvexBody& b,
                                      const Budgets& budgets, std::uint64_t seed);

/// mu(f 1_B) >= mu(f) mu(B) for f in C-bar_d, separable B, product measure.
VerificationReport verify_theorem_3_1(const ScalarField& field, const ProductDensity& measure, const ConvexBody& b,
                                      const Budgets& budgets, std::uint64_t seed);

}  // namespace gci
