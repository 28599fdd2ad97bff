#include "gci/linalg.hpp"

#include <cmath>
#include <numbers>

namespace gci {

double sphere_area(int d) {
  if (d < 1) throw std::invalid_argument("sphere dimension must be positive");
  const double half = 0.5 * d;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

void require_spd(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw std::invalid_argument("matrix must be square and nonempty");
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  if (!m.isApprox(m.transpose(), 1e-12)) throw std::invalid_argument("matrix must be symmetric");
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("matrix must be positive definite");
}

SymmetricRoots symmetric_roots(const Matrix& m, double floor) {
  require_spd(m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(floor);
  SymmetricRoots roots;
  roots.min_eigenvalue = eig.eigenvalues().minCoeff();
  roots.sqrt = eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  roots.inv_sqrt = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  return roots;
}

}  // namespace gci
