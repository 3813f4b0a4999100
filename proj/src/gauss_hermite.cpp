#include <cmath>

#include <Eigen/Eigenvalues>

#include "dfwm/atomvapor.hpp"
#include "dfwm/constants.hpp"
#include "dfwm/errors.hpp"

namespace dfwm::atomvapor {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
// physicists' Hermite recurrence, weights come from the first eigenvector
// components.
GaussHermiteRule gauss_hermite_rule(std::size_t n)
{
  if (n == 0) throw DomainError("Gauss-Hermite rule needs at least one node");
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(size);
  Eigen::VectorXd sub(size > 1 ? size - 1 : 0);
  for (Eigen::Index k = 0; k + 1 < size; ++k) sub(k) = std::sqrt(0.5 * static_cast<double>(k + 1));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw IntegrationError("Gauss-Hermite eigen-solve failed");

  GaussHermiteRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = std::sqrt(constants::pi) * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace dfwm::atomvapor
