#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gci {

/// A one-dimensional probability law tabulated on a uniform grid.
///
/// The density is sampled at the nodes and read between them by linear
/// interpolation; the CDF is the exact integral of that interpolant
/// (cumulative trapezoid at the nodes, quadratic inside a cell), and the
/// quantile inverts the same quadratic, so quantile(cdf(x)) == x up to
/// rounding wherever the density is positive.
class Tabulated1D {
 public:
  /// Power of two plus one, so the grid nests under halving.
  static constexpr std::size_t kDefaultNodes = 65537;

  Tabulated1D(const std::function<double(double)>& density, double lo, double hi,
              std::size_t nodes = kDefaultNodes);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double step() const { return h_; }
  std::size_t size() const { return pdf_.size(); }

  /// Integral of the density as supplied (end-corrected trapezoid), before
  /// normalisation; cdf(hi) == 1.
  double raw_mass() const { return raw_mass_; }

  double pdf(double x) const;
  double cdf(double x) const;
  double quantile(double p) const;

  std::span<const double> pdf_nodes() const { return pdf_; }
  std::span<const double> cdf_nodes() const { return cdf_; }
  double node(std::size_t i) const { return lo_ + h_ * static_cast<double>(i); }

 private:
  double lo_;
  double hi_;
  double h_;
  double raw_mass_ = 0.0;
  std::vector<double> pdf_;
  std::vector<double> cdf_;
};

}  // namespace gci
