#pragma once

#include "gci/convex_body.hpp"
#include "gci/correlation.hpp"
#include "gci/measures.hpp"
#include "gci/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gci {

enum class BodyKind { polytope, ellipsoid, projection_closed, symmetric_polytope };
enum class MeasureKind { gaussian, radial_grid, product };

struct InstanceSpec {
  std::size_t dim = 2;
  BodyKind body = BodyKind::polytope;
  MeasureKind measure = MeasureKind::gaussian;
  /// Require 0 in A; false asks for A strictly away from the origin.
  bool origin = true;
  /// Ellipsoidal B (axis-aligned) instead of a centred ball.
  bool ellipsoid_b = false;
};

struct Instance {
  ConvexBody a;
  Measure measure;
  ConvexBody b;
  double ball_radius = 0.0;  // radius of B when it is a ball
  std::string descriptor;    // canonical JSON of A
};

/// Deterministic in (spec, seed). Infeasible specs throw std::invalid_argument.
Instance random_instance(const InstanceSpec& spec, std::uint64_t seed);

/// Seed of instance `index` in a run seeded with `seed`.
std::uint64_t instance_seed(std::uint64_t seed, std::size_t index);

struct BatchRow {
  std::size_t instance_id = 0;
  std::string theorem;
  std::size_t dim = 0;
  std::string body_hash;
  double gap = 0.0;
  double se = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t seed = 0;
  std::string instance;
};

struct BatchReport {
  std::vector<BatchRow> rows;
  std::size_t confirmed = 0;
  std::size_t inconclusive = 0;
  std::size_t violated = 0;
  std::size_t inapplicable = 0;

  void add(BatchRow row);
};

/// Random instances of theorem "1.1", "1.2", "2.1", "4.1" or "corollary",
/// cycling through `dims`. A `violated` row is reported on stderr at once.
BatchReport batch_verify(const std::string& theorem, std::size_t n_instances, const std::vector<std::size_t>& dims,
                         const Budgets& budgets, std::uint64_t seed);

inline const std::vector<std::string> kBrokenHypotheses = {"origin-not-in-A", "A-not-projection-closed",
                                                           "phi-not-decreasing", "tilt-not-logconcave"};

/// Instances breaking exactly one hypothesis, sorted by gap / SE ascending.
/// Unknown tags throw std::invalid_argument.
BatchReport necessity_scan(const std::string& broken, std::size_t n_instances, const Budgets& budgets,
                           std::uint64_t seed);

/// Rows with gap < -5 SE.
std::size_t count_negative(const BatchReport& report, double k = kViolationSigmas);

/// instance_id,theorem,d,body_descriptor_hash,gap,se,verdict,seed
std::string to_csv(const BatchReport& report);

}  // namespace gci
