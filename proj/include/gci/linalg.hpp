#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gci {

/// A point of R^d. Dimension is the vector size.
using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class DimensionError : public std::invalid_argument {
 public:
  DimensionError(std::size_t expected, std::size_t got)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(got)) {}
};

inline void require_dim(const Point& x, std::size_t d) {
  if (static_cast<std::size_t>(x.size()) != d) throw DimensionError(d, static_cast<std::size_t>(x.size()));
}

/// Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// Symmetric square root and inverse square root through an eigendecomposition.
/// Eigenvalues below `floor` are clamped to it.
struct SymmetricRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
  double min_eigenvalue = 0.0;
};
SymmetricRoots symmetric_roots(const Matrix& m, double floor = 1e-12);

/// Throws std::invalid_argument unless `m` is symmetric positive definite.
void require_spd(const Matrix& m);

}  // namespace gci
