#pragma once

#include "gci/convex_body.hpp"
#include "gci/correlation.hpp"
#include "gci/measures.hpp"
#include "gci/scalar_field.hpp"
#include "gci/transport.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace gci {

/// Malformed or inconsistent instance description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// Reads and parses a JSON file; syntax errors become ConfigError.
Json load_json_file(const std::string& path);

ConvexBody parse_body(const Json& j);
Profile parse_profile(const Json& j);
RadialDensity parse_radial(const Json& j);
ProductDensity parse_product(const Json& j);
Measure parse_measure(const Json& j);
ScalarField parse_field(const Json& j, std::size_t dim);
QuadraticProfile parse_phi(const Json& j);
Matrix parse_matrix(const Json& j);
Density1D parse_density_1d(const Json& j);
/// Fields present in `j` override `defaults`.
Budgets parse_budgets(const Json& j, Budgets defaults);

/// Canonical description of a body; its dump is hashed into CSV reports.
Json body_json(const ConvexBody& body);

/// {"type": "power", "power": p, "scale": s} component t -> (t / s)^p.
GridFunction power_component(double power, double scale);

}  // namespace gci
