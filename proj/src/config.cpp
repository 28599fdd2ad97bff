#include "gci/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gci {

namespace {

template <class F>
auto guarded(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string(what) + ": missing \"" + key + "\"");
  return *it;
}

std::string type_of(const Json& j, const char* what) { return require(j, "type", what).get<std::string>(); }

std::vector<double> numbers(const Json& j) { return j.get<std::vector<double>>(); }

Point point(const Json& j) {
  const auto v = numbers(j);
  return Eigen::Map<const Point>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Json grid_json(const GridFunction& g) {
  return {{"t", std::vector<double>(g.nodes().begin(), g.nodes().end())},
          {"values", std::vector<double>(g.values().begin(), g.values().end())}};
}

GridFunction parse_component(const Json& j) {
  if (j.contains("power")) return power_component(j.at("power").get<double>(), j.value("scale", 1.0));
  return GridFunction(numbers(require(j, "t", "component")), numbers(require(j, "values", "component")));
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

GridFunction power_component(double power, double scale) {
  if (!(power > 0.0) || !(scale > 0.0)) throw std::invalid_argument("power component needs positive power and scale");
  // Nodes graded so that the values, not the abscissae, are evenly spread.
  constexpr int kNodes = 4096;
  const double grade = power < 1.0 ? 1.0 / power : 1.0;
  std::vector<double> t(kNodes + 1);
  std::vector<double> v(kNodes + 1);
  for (int i = 0; i <= kNodes; ++i) {
    const double u = static_cast<double>(i) / kNodes;
    t[i] = scale * std::pow(u, grade);
    v[i] = std::pow(t[i] / scale, power);
  }
  t.back() = scale;
  v.back() = 1.0;
  return GridFunction(std::move(t), std::move(v));
}

ConvexBody parse_body(const Json& j) {
  return guarded("body", [&]() -> ConvexBody {
    const std::string type = type_of(j, "body");
    if (type == "ball") return ConvexBody::ball(require(j, "dim", "ball").get<std::size_t>(), j.value("radius", 1.0));
    if (type == "ellipsoid") return ConvexBody::ellipsoid(numbers(require(j, "semi_axes", "ellipsoid")));
    if (type == "quadratic_ellipsoid") return ConvexBody::quadratic_ellipsoid(parse_matrix(require(j, "matrix", "quadratic_ellipsoid")));
    if (type == "box") return ConvexBody::box(numbers(require(j, "lo", "box")), numbers(require(j, "hi", "box")));
    if (type == "simplex") return ConvexBody::simplex(require(j, "dim", "simplex").get<std::size_t>());
    if (type == "polytope") {
      std::vector<Halfspace> hs;
      for (const auto& h : require(j, "halfspaces", "polytope"))
        hs.push_back({point(require(h, "normal", "halfspace")), require(h, "offset", "halfspace").get<double>()});
      std::optional<double> hint;
      if (j.contains("radius_hint")) hint = j.at("radius_hint").get<double>();
      return ConvexBody::hpolytope(std::move(hs), hint);
    }
    if (type == "generalized_ball") {
      std::vector<GridFunction> comps;
      for (const auto& c : require(j, "components", "generalized_ball")) comps.push_back(parse_component(c));
      return ConvexBody::generalized_ball(std::move(comps));
    }
    if (type == "intersection") {
      std::vector<ConvexBody> bodies;
      for (const auto& b : require(j, "bodies", "intersection")) bodies.push_back(parse_body(b));
      return ConvexBody::intersection(std::move(bodies));
    }
    throw ConfigError("unknown body type \"" + type + "\"");
  });
}

Json body_json(const ConvexBody& body) {
  return std::visit(
      [&](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"dim", s.dim}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return {{"type", "ellipsoid"}, {"semi_axes", s.semi_axes}};
        } else if constexpr (std::is_same_v<T, QuadraticEllipsoid>) {
          Json rows = Json::array();
          for (Eigen::Index r = 0; r < s.matrix.rows(); ++r) {
            std::vector<double> row(static_cast<std::size_t>(s.matrix.cols()));
            for (Eigen::Index c = 0; c < s.matrix.cols(); ++c) row[static_cast<std::size_t>(c)] = s.matrix(r, c);
            rows.push_back(row);
          }
          return {{"type", "quadratic_ellipsoid"}, {"matrix", rows}};
        } else if constexpr (std::is_same_v<T, HPolytope>) {
          Json hs = Json::array();
          for (const auto& h : s.halfspaces)
            hs.push_back({{"normal", std::vector<double>(h.normal.data(), h.normal.data() + h.normal.size())}, {"offset", h.offset}});
          Json out{{"type", "polytope"}, {"halfspaces", hs}};
          if (s.radius_hint) out["radius_hint"] = *s.radius_hint;
          return out;
        } else if constexpr (std::is_same_v<T, GeneralizedBall>) {
          Json comps = Json::array();
          for (const auto& c : s.components) comps.push_back(grid_json(c));
          return {{"type", "generalized_ball"}, {"components", comps}};
        } else {
          Json bodies = Json::array();
          for (const auto& b : s.bodies) bodies.push_back(body_json(b));
          return {{"type", "intersection"}, {"bodies", bodies}};
        }
      },
      body.shape());
}

Profile parse_profile(const Json& j) {
  return guarded("profile", [&]() -> Profile {
    const std::string kind = require(j, "kind", "profile").get<std::string>();
    if (kind == "gaussian") return Profile::gaussian(j.value("sigma", 1.0));
    if (kind == "exponential_power")
      return Profile::exponential_power(require(j, "scale", "profile").get<double>(), require(j, "power", "profile").get<double>());
    if (kind == "grid") return Profile::from_grid(numbers(require(j, "t", "profile")), numbers(require(j, "rho", "profile")));
    throw ConfigError("unknown profile kind \"" + kind + "\"");
  });
}

RadialDensity parse_radial(const Json& j) {
  return guarded("measure", [&]() -> RadialDensity {
    const std::string type = type_of(j, "measure");
    const int d = require(j, "dim", "measure").get<int>();
    if (type == "gaussian") return gaussian(d);
    if (type == "radial") {
      std::optional<double> r_max;
      if (j.contains("truncation_radius")) r_max = j.at("truncation_radius").get<double>();
      return RadialDensity(d, parse_profile(require(j, "profile", "radial measure")), r_max);
    }
    throw ConfigError("a radial measure is required, got \"" + type + "\"");
  });
}

ProductDensity parse_product(const Json& j) {
  return guarded("measure", [&]() -> ProductDensity {
    const std::string type = type_of(j, "measure");
    if (type == "gaussian_product" || type == "gaussian") return gaussian_product(require(j, "dim", "measure").get<int>());
    if (type == "product") {
      std::vector<Marginal> ms;
      for (const auto& p : require(j, "marginals", "product measure")) ms.emplace_back(parse_profile(p));
      return ProductDensity(std::move(ms));
    }
    throw ConfigError("a product measure is required, got \"" + type + "\"");
  });
}

Measure parse_measure(const Json& j) {
  return guarded("measure", [&]() -> Measure {
    const std::string type = type_of(j, "measure");
    if (type == "gaussian_product" || type == "product") return parse_product(j);
    return parse_radial(j);
  });
}

ScalarField parse_field(const Json& j, std::size_t dim) {
  return guarded("field", [&]() -> ScalarField {
    const std::string type = type_of(j, "field");
    ScalarField f;
    if (type == "gaussian_bump") {
      std::optional<Point> c;
      if (j.contains("center")) c = point(j.at("center"));
      f = gaussian_bump(dim, require(j, "rate", "gaussian_bump").get<double>(), c);
    } else if (type == "fn") {
      f = fn_field(parse_body(require(j, "body", "fn")), require(j, "n", "fn").get<int>());
    } else if (type == "indicator") {
      f = indicator_field(parse_body(require(j, "body", "indicator")));
    } else if (type == "constant") {
      f = constant_field(dim, j.value("value", 1.0));
    } else if (type == "exp_quadratic_growth") {
      // exp(+rate |x|^2): integrable against the Gaussian for rate < 1/2, not log-concave.
      const double rate = require(j, "rate", "exp_quadratic_growth").get<double>();
      f = custom_field(dim, [rate](const Point& x) { return std::exp(rate * x.squaredNorm()); },
                       "exp(+" + std::to_string(rate) + "|x|^2)");
    } else {
      throw ConfigError("unknown field type \"" + type + "\"");
    }
    if (f.dim != dim) throw ConfigError("field dimension " + std::to_string(f.dim) + " does not match " + std::to_string(dim));
    return f;
  });
}

QuadraticProfile parse_phi(const Json& j) {
  return guarded("phi", [&]() -> QuadraticProfile {
    const std::string type = type_of(j, "phi");
    if (type == "exp") return exp_profile(require(j, "rate", "phi").get<double>());
    if (type == "constant") return constant_profile(j.value("value", 1.0));
    if (type == "power") return power_profile(require(j, "power", "phi").get<double>());
    if (type == "phi_n") return phi_n_profile(require(j, "n", "phi").get<int>());
    if (type == "grid") return grid_profile(GridFunction(numbers(require(j, "t", "phi")), numbers(require(j, "values", "phi"))));
    throw ConfigError("unknown phi type \"" + type + "\"");
  });
}

Matrix parse_matrix(const Json& j) {
  return guarded("matrix", [&]() -> Matrix {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto row = numbers(j.at(static_cast<std::size_t>(r)));
      if (static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    return m;
  });
}

Density1D parse_density_1d(const Json& j) {
  return guarded("density", [&]() -> Density1D {
    const std::string type = type_of(j, "density");
    const double sigma = j.value("sigma", 1.0);
    if (type == "normal") return normal_density(sigma);
    if (type == "tilted_normal") {
      const Json& tilt = require(j, "tilt", "tilted_normal");
      const double rate = require(tilt, "rate", "tilt").get<double>();
      const double power = tilt.value("power", 2.0);
      const double center = tilt.value("center", 0.0);
      if (!(rate >= 0.0) || !(power > 0.0)) throw ConfigError("tilt needs rate >= 0 and power > 0");
      std::ostringstream os;
      os.precision(17);
      os << "exp(-" << rate << "|x-" << center << "|^" << power << ")";
      return tilted_normal(sigma, [rate, power, center](double x) { return std::exp(-rate * std::pow(std::abs(x - center), power)); },
                           os.str());
    }
    if (type == "grid") {
      const GridFunction g(numbers(require(j, "t", "density")), numbers(require(j, "density", "density")));
      return {[g](double x) { return x < g.front() || x > g.back() ? 0.0 : std::max(0.0, g(x)); }, g.front(), g.back(), "grid density"};
    }
    throw ConfigError("unknown density type \"" + type + "\"");
  });
}

Budgets parse_budgets(const Json& j, Budgets b) {
  return guarded("budgets", [&]() -> Budgets {
    if (j.is_null()) return b;
    if (!j.is_object()) throw ConfigError("budgets must be an object");
    if (j.contains("samples")) b.samples = j.at("samples").get<std::size_t>();
    if (j.contains("directions")) b.directions = j.at("directions").get<std::size_t>();
    if (j.contains("t_steps")) b.t_steps = j.at("t_steps").get<std::size_t>();
    if (j.contains("hypothesis_samples")) b.hypothesis_samples = j.at("hypothesis_samples").get<std::size_t>();
    if (j.contains("ladder")) b.ladder = j.at("ladder").get<std::vector<int>>();
    return b;
  });
}

}  // namespace gci
