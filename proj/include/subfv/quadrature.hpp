#pragma once

#include <vector>

namespace subfv::quad {

/// Nodes and weights of an n-point Gauss rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1],
/// alpha, beta > -1, built by the Golub-Welsch eigenvalue method.
Rule gauss_jacobi(int n, double alpha, double beta);

/// Gauss-Legendre rule on [-1, 1]; cached per order.
const Rule& gauss_legendre(int n);

}  // namespace subfv::quad
