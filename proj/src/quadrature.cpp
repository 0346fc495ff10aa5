#include "subfv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "subfv/grid.hpp"

namespace subfv::quad {

Rule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw InvalidArgument("Gauss rule needs at least one node");
  if (!(alpha > -1.0 && beta > -1.0)) throw InvalidArgument("Jacobi exponents must exceed -1");

  // Three-term recurrence of the monic Jacobi polynomials.
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                       : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double j = k + 1.0;
      const double sj = 2.0 * j + ab;
      // For j = 1 the factor (j + ab) cancels against (sj - 1).
      const double num = (j == 1.0) ? 4.0 * (1.0 + alpha) * (1.0 + beta)
                                     : 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
      const double den = (j == 1.0) ? sj * sj * (sj + 1.0) : sj * sj * (sj + 1.0) * (sj - 1.0);
      off(k) = std::sqrt(num / den);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw InvalidArgument("Golub-Welsch eigen solve failed");

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Rule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double v = eig.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = eig.eigenvalues()(k);
    rule.weights[static_cast<std::size_t>(k)] = mu0 * v * v;
  }
  return rule;
}

const Rule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
  return it->second;
}

}  // namespace subfv::quad
