#include "gci/scalar_field.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gci {

std::string to_string(ScalarField::Kind kind) {
  switch (kind) {
    case ScalarField::Kind::indicator:
      return "indicator";
    case ScalarField::Kind::fn_approximant:
      return "fn-approximant";
    case ScalarField::Kind::log_concave_closed_form:
      return "log-concave-closed-form";
    case ScalarField::Kind::composed_quadratic:
      return "composed-quadratic";
    case ScalarField::Kind::constant:
      return "constant";
    case ScalarField::Kind::custom:
      return "custom";
  }
  return "custom";
}

ScalarField indicator_field(const ConvexBody& body) {
  ScalarField f;
  f.dim = body.dim();
  f.kind = ScalarField::Kind::indicator;
  f.eval = [body](const Point& x) { return contains(body, x) ? 1.0 : 0.0; };
  try {
    f.support_radius = bounding_radius(body);
    f.support_box = bounding_box(body);
  } catch (const std::exception&) {
  }
  if (body.kind() == "ball") {
    const double r = std::get<Ball>(body.shape()).radius;
    f.radial = [r](double t) { return t <= r ? 1.0 : 0.0; };
  }
  f.description = "indicator(" + body.kind() + ")";
  return f;
}

ScalarField constant_field(std::size_t dim, double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("field values must be nonnegative");
  ScalarField f;
  f.dim = dim;
  f.kind = ScalarField::Kind::constant;
  f.eval = [value](const Point&) { return value; };
  f.radial = [value](double) { return value; };
  std::ostringstream os;
  os.precision(17);
  os << "constant(" << value << ")";
  f.description = os.str();
  return f;
}

ScalarField gaussian_bump(std::size_t dim, double rate, std::optional<Point> center) {
  if (!(rate > 0.0)) throw std::invalid_argument("bump rate must be positive");
  ScalarField f;
  f.dim = dim;
  f.kind = ScalarField::Kind::log_concave_closed_form;
  std::ostringstream os;
  os.precision(17);
  os << "exp(-" << rate << "|x";
  if (center && center->norm() > 0.0) {
    require_dim(*center, dim);
    const Point c = *center;
    f.eval = [rate, c](const Point& x) { return std::exp(-rate * (x - c).squaredNorm()); };
    os << "-c";
  } else {
    f.eval = [rate](const Point& x) { return std::exp(-rate * x.squaredNorm()); };
    f.radial = [rate](double t) { return std::exp(-rate * t * t); };
  }
  os << "|^2)";
  f.description = os.str();
  return f;
}

ScalarField composed_quadratic(const Matrix& sigma, std::function<double(double)> phi, std::string phi_description) {
  require_spd(sigma);
  ScalarField f;
  f.dim = static_cast<std::size_t>(sigma.rows());
  f.kind = ScalarField::Kind::composed_quadratic;
  f.eval = [sigma, phi](const Point& x) { return phi(x.dot(sigma * x)); };
  if (sigma.isIdentity(0.0)) f.radial = [phi](double t) { return phi(t * t); };
  f.description = "phi(<Sx,x>), phi=" + phi_description;
  return f;
}

ScalarField custom_field(std::size_t dim, std::function<double(const Point&)> eval, std::string description) {
  ScalarField f;
  f.dim = dim;
  f.kind = ScalarField::Kind::custom;
  f.eval = std::move(eval);
  f.description = std::move(description);
  return f;
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  if (f.dim != g.dim) throw DimensionError(f.dim, g.dim);
  ScalarField h;
  h.dim = f.dim;
  h.kind = ScalarField::Kind::custom;
  h.eval = [fe = f.eval, ge = g.eval](const Point& x) {
    const double a = fe(x);
    return a == 0.0 ? 0.0 : a * ge(x);
  };
  if (f.radial && g.radial) h.radial = [fr = f.radial, gr = g.radial](double t) { return fr(t) * gr(t); };
  if (f.support_radius && g.support_radius) h.support_radius = std::min(*f.support_radius, *g.support_radius);
  else if (f.support_radius) h.support_radius = f.support_radius;
  else h.support_radius = g.support_radius;
  h.description = f.description + "*" + g.description;
  return h;
}

}  // namespace gci
