#pragma once

#include <stdexcept>

#include "subfv/subfbm.hpp"
#include "subfv/vasicek.hpp"

namespace subfv {

/// Raised when the pre-sample X(t_0..t_{n-1}) is numerically constant and the
/// normal equations are singular.
class DegeneratePath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form least-squares fit of (theta, mu) with diagnostics.
struct EstimationResult {
  double theta_hat = 0.0;
  double mu_hat = 0.0;
  /// (1/n) sum X_{i-1}^2 - ((1/n) sum X_{i-1})^2.
  double denominator = 0.0;
  /// d(contrast)/d(mu) and d(contrast)/d(theta) equations at the fit.
  double residual_mu = 0.0;
  double residual_theta = 0.0;
};

/// Pre-sample variance at or below this fraction of max|X|^2 is degenerate.
inline constexpr double kDegenerateRelTol = 1e-14;

/// sum_i |X_i - X_{i-1} - (mu + theta X_{i-1}) / n|^2.
double contrast(double theta, double mu, const ObservedPath& path);

/// Least-squares estimators of theta and mu from a path with n >= 2 steps.
/// Throws DegeneratePath (see kDegenerateRelTol) or InvalidArgument.
EstimationResult estimate(const ObservedPath& path);

struct ErrorTerms {
  double theta = 0.0;
  double mu = 0.0;
};

/// Estimation errors written through the driving noise, for a path produced
/// by euler_path(params0, noise):
///
///   theta_hat - theta0 = sigma (sum X_{i-1} dS_i - (1/n) sum X_{i-1} S_1) / D,
///   mu_hat - mu0 = sigma (sum X_{i-1}^2 S_1 - sum X_{i-1} sum X_{i-1} dS_i) / (n D),
///
/// with D the estimator denominator. Sums are evaluated as written.
ErrorTerms error_decomposition(const ObservedPath& path, const VasicekParams& params0,
                               const SubFbmPath& noise);

}  // namespace subfv
