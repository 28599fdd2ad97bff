#include "gci/monotone_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gci {

GridFunction::GridFunction(std::vector<double> t, std::vector<double> values)
    : t_(std::move(t)), v_(std::move(values)) {
  if (t_.size() != v_.size()) throw std::invalid_argument("grid abscissae and values differ in length");
  if (t_.size() < 2) throw std::invalid_argument("grid needs at least two nodes");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(v_[i])) throw std::invalid_argument("grid contains non-finite entries");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw std::invalid_argument("grid abscissae must be strictly increasing");
  }
  if (t_.size() >= 4) {
    auto x = t_;
    auto y = v_;
    cubic_.emplace(std::move(x), std::move(y));
  }
}

double GridFunction::operator()(double x) const {
  if (x <= t_.front()) return v_.front();
  const std::size_t n = t_.size();
  if (x >= t_.back()) {
    const double slope = (v_[n - 1] - v_[n - 2]) / (t_[n - 1] - t_[n - 2]);
    return v_.back() + slope * (x - t_.back());
  }
  if (cubic_) return (*cubic_)(x);
  const auto it = std::upper_bound(t_.begin(), t_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
  const double w = (x - t_[i]) / (t_[i + 1] - t_[i]);
  return (1.0 - w) * v_[i] + w * v_[i + 1];
}

bool GridFunction::strictly_increasing() const {
  return std::adjacent_find(v_.begin(), v_.end(), std::greater_equal<>()) == v_.end();
}

bool GridFunction::nonincreasing() const {
  return std::adjacent_find(v_.begin(), v_.end(), std::less<>()) == v_.end();
}

double GridFunction::inverse(double y, double tol) const {
  if (y <= v_.front()) return t_.front();
  double lo = t_.front();
  double hi = t_.back();
  if ((*this)(hi) < y) {
    const std::size_t n = t_.size();
    const double slope = (v_[n - 1] - v_[n - 2]) / (t_[n - 1] - t_[n - 2]);
    if (!(slope > 0.0)) throw std::domain_error("grid function never reaches the requested level");
    return t_.back() + (y - v_.back()) / slope;
  }
  // Bracket on the grid first; the interpolant reproduces nodes exactly.
  const auto it = std::lower_bound(v_.begin(), v_.end(), y);
  const std::size_t j = static_cast<std::size_t>(it - v_.begin());
  if (v_[j] == y) return t_[j];
  lo = t_[j - 1];
  hi = t_[j];
  for (int it_count = 0; it_count < 200 && hi - lo > tol * std::max(1.0, std::abs(hi)); ++it_count) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < y) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gci
