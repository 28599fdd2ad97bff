#pragma once

#include "gci/convex_body.hpp"
#include "gci/linalg.hpp"

#include <functional>
#include <optional>
#include <string>

namespace gci {

/// Nonnegative function on R^d that estimators integrate.
struct ScalarField {
  enum class Kind { indicator, fn_approximant, log_concave_closed_form, composed_quadratic, constant, custom };

  std::size_t dim = 0;
  Kind kind = Kind::custom;
  std::function<double(const Point&)> eval;
  /// Set when f(x) depends on |x| only; enables exact sphere averages.
  std::function<double(double)> radial;
  /// f vanishes outside Ball{support_radius}.
  std::optional<double> support_radius;
  /// f vanishes outside this box.
  std::optional<AxisBox> support_box;
  std::string description;

  double operator()(const Point& x) const { return eval(x); }
};

std::string to_string(ScalarField::Kind kind);

ScalarField indicator_field(const ConvexBody& body);
ScalarField constant_field(std::size_t dim, double value);
/// exp(-rate * |x - center|^2); center defaults to the origin.
ScalarField gaussian_bump(std::size_t dim, double rate, std::optional<Point> center = std::nullopt);
/// x -> phi(<Sigma x, x>).
ScalarField composed_quadratic(const Matrix& sigma, std::function<double(double)> phi, std::string phi_description);
ScalarField custom_field(std::size_t dim, std::function<double(const Point&)> eval, std::string description);

/// Product of two fields of equal dimension.
ScalarField product(const ScalarField& f, const ScalarField& g);

}  // namespace gci
