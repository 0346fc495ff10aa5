#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "subfv/grid.hpp"

namespace subfv {

/// A bounded, piecewise continuous function on [0, 1].
///
/// `breakpoints` lists every point in (0, 1) where the function jumps or
/// loses smoothness; the quadrature splits there. Smooth functions leave it
/// empty.
struct Integrand {
  std::function<double(double)> fn;
  std::vector<double> breakpoints;

  double operator()(double s) const { return fn(s); }

  /// 1 on [a, b], 0 elsewhere.
  static Integrand indicator(double a, double b);
};

class QuadratureNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Covariance of the Wiener integrals of phi and psi against sub-fBm:
///
///   H(2H-1) * int_0^1 int_0^1 phi(s) psi(t) [|s-t|^{2H-2} - (s+t)^{2H-2}] ds dt.
///
/// The |s-t|^{2H-2} part is folded onto the triangle s < t and written in the
/// diagonal distance r = t - s; the (s+t)^{2H-2} part is written in w = s + t.
/// Both become one-dimensional integrals with an algebraic endpoint weight,
/// handled by Gauss-Jacobi on the panel touching the singular point and
/// Gauss-Legendre elsewhere. Panel counts double until two successive levels
/// agree to `tol` relative.
///
/// Requires h > 1/2 and tol > 0. Throws QuadratureNotConverged when the
/// refinement budget runs out.
double weighted_integral_covariance(const Integrand& phi, const Integrand& psi,
                                    HurstParameter h, double tol = 1e-10);

}  // namespace subfv
