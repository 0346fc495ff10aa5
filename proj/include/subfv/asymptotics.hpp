#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "subfv/grid.hpp"
#include "subfv/parallel.hpp"
#include "subfv/vasicek.hpp"

namespace subfv {

/// The limit law is undefined because the skeleton is constant on [0, 1].
class DegenerateSkeleton : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// D1 = int_0^1 X0, D2 = int_0^1 X0^2.
struct SkeletonMoments {
  double d1 = 0.0;
  double d2 = 0.0;
  double spread() const noexcept { return d2 - d1 * d1; }
};

/// Closed form, stable through theta = 0.
SkeletonMoments deterministic_moments(const VasicekParams& params0);

/// D2 - D1^2 at or below this fraction of D2 counts as a constant skeleton.
inline constexpr double kDegenerateSkeletonRelTol = 1e-12;

bool is_degenerate(const SkeletonMoments& m) noexcept;

/// Centred Gaussian limits of sigma^{-1}(theta_hat - theta0) and
/// sigma^{-1}(mu_hat - mu0) as n -> inf, sigma -> 0, n sigma -> inf.
struct LimitLaw {
  double variance_theta = 0.0;
  double variance_mu = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double denom = 0.0;
};

/// Both limits are Wiener integrals of deterministic integrands over
/// D2 - D1^2:
///   theta: X0(s) - D1,   mu: D2 - D1 X0(s).
/// Their variances come from weighted_integral_covariance.
LimitLaw limit_law(const VasicekParams& params0, HurstParameter h, double tol = 1e-10);

/// Which discretisation generates simulated data.
enum class Scheme { euler, exact_transition };

struct LimitSamples {
  std::vector<double> theta;  // sigma^{-1}(theta_hat - theta0)
  std::vector<double> mu;     // sigma^{-1}(mu_hat - mu0)
  /// n * sigma < 10: the deterministic bias is not negligible.
  bool regime_warning = false;
};

/// Normalised estimation errors over independent simulated paths. The
/// sigma field of params0 is ignored in favour of `sigma`.
LimitSamples empirical_limit_sample(const VasicekParams& params0, HurstParameter h, int n,
                                    double sigma, std::size_t replicates, std::uint64_t seed,
                                    Scheme scheme = Scheme::euler,
                                    Execution exec = Execution::parallel);

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
/// N(0, variance).
double ks_distance(std::span<const double> samples, double variance);

/// For each n: E(int_{1-1/n}^1 e^{theta(1-s)} dS_s)^2 / (|e^{-2 theta/n} - 1| n^{1-2H}).
/// Requires theta < 0 and h > 1/2.
std::vector<double> lemma_variance_ratio(double theta, HurstParameter h,
                                         std::span<const int> n_values, double tol = 1e-10);

}  // namespace subfv
