#pragma once

// pchip.hpp calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <optional>
#include <span>
#include <vector>

namespace gci {

/// A function of one real variable known on a strictly increasing grid.
/// Between nodes it is the shape-preserving (PCHIP) cubic, so monotone data
/// gives a monotone interpolant and positive data stays positive. Left of the
/// grid the first value is held; right of it the last secant is continued.
class GridFunction {
 public:
  GridFunction(std::vector<double> t, std::vector<double> values);

  double operator()(double x) const;

  std::span<const double> nodes() const { return t_; }
  std::span<const double> values() const { return v_; }
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

  bool strictly_increasing() const;
  bool nonincreasing() const;

  /// Smallest x >= front() with f(x) = y, for an increasing f; bisection to
  /// `tol`. Values above the grid use the right-hand extrapolation.
  double inverse(double y, double tol = 1e-14) const;

 private:
  std::vector<double> t_;
  std::vector<double> v_;
  std::optional<boost::math::interpolators::pchip<std::vector<double>>> cubic_;
};

}  // namespace gci
