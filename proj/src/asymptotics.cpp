#include "subfv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "subfv/inner_product.hpp"
#include "subfv/lse.hpp"
#include "subfv/numerics.hpp"
#include "subfv/subfbm.hpp"

namespace subfv {

namespace {

// phi_k(z) = sum_{j>=0} z^j / (j+k)!, so phi_0 = e^z and
// phi_k(z) = (phi_{k-1}(z) - 1/(k-1)!) / z.
double phi_function(int k, double z) {
  if (std::abs(z) < 1.0) {
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term /= j;
    double sum = 0.0;
    for (int j = 0; j < 40 && term != 0.0; ++j) {
      sum += term;
      term *= z / (j + k + 1);
    }
    return sum;
  }
  double value = std::exp(z);
  double factorial = 1.0;
  for (int j = 1; j <= k; ++j) {
    value = (value - 1.0 / factorial) / z;
    factorial *= j;
  }
  return value;
}

}  // namespace

SkeletonMoments deterministic_moments(const VasicekParams& p) {
  p.validate();
  // X0(s) = x0 e^{theta s} + mu s phi_1(theta s). Integrating term by term:
  //   int e^{theta s}                = phi_1(theta)
  //   int s phi_1(theta s)           = phi_2(theta)
  //   int e^{2 theta s}              = phi_1(2 theta)
  //   int e^{theta s} s phi_1(theta s) = 2 phi_2(2 theta) - phi_2(theta)
  //   int s^2 phi_1(theta s)^2       = 4 phi_3(2 theta) - 2 phi_3(theta)
  const double z = p.theta;
  SkeletonMoments m;
  m.d1 = p.x0 * phi_function(1, z) + p.mu * phi_function(2, z);
  m.d2 = p.x0 * p.x0 * phi_function(1, 2.0 * z) +
         2.0 * p.x0 * p.mu * (2.0 * phi_function(2, 2.0 * z) - phi_function(2, z)) +
         p.mu * p.mu * (4.0 * phi_function(3, 2.0 * z) - 2.0 * phi_function(3, z));
  return m;
}

bool is_degenerate(const SkeletonMoments& m) noexcept {
  return !(m.spread() > kDegenerateSkeletonRelTol * m.d2);
}

LimitLaw limit_law(const VasicekParams& params0, HurstParameter h, double tol) {
  if (h.value() <= 0.5) throw InvalidArgument("limit_law requires H > 1/2");
  const auto m = deterministic_moments(params0);
  if (is_degenerate(m))
    throw DegenerateSkeleton("deterministic skeleton is constant on [0, 1]; the limit law of "
                             "the estimators is undefined");
  LimitLaw law;
  law.d1 = m.d1;
  law.d2 = m.d2;
  law.denom = m.spread();

  const VasicekParams skeleton{params0.mu, params0.theta, 0.0, params0.x0};
  const Integrand f_theta{[=](double s) { return deterministic_skeleton(s, skeleton) - m.d1; }, {}};
  const Integrand f_mu{[=](double s) { return m.d2 - m.d1 * deterministic_skeleton(s, skeleton); },
                       {}};
  const double denom2 = law.denom * law.denom;
  law.variance_theta = weighted_integral_covariance(f_theta, f_theta, h, tol) / denom2;
  law.variance_mu = weighted_integral_covariance(f_mu, f_mu, h, tol) / denom2;
  return law;
}

LimitSamples empirical_limit_sample(const VasicekParams& params0, HurstParameter h, int n,
                                    double sigma, std::size_t replicates, std::uint64_t seed,
                                    Scheme scheme, Execution exec) {
  if (replicates < 1) throw InvalidArgument("replicates must be at least 1");
  if (!(sigma > 0.0)) throw InvalidArgument("normalised errors need sigma > 0");
  VasicekParams params = params0;
  params.sigma = sigma;
  params.validate();

  const PathSampler sampler(TimeGrid(n), h);
  LimitSamples out;
  out.theta.resize(replicates);
  out.mu.resize(replicates);
  out.regime_warning = n * sigma < 10.0;
  for_each_replicate(
      replicates,
      [&](std::size_t k) {
        const SubFbmPath noise = sampler.draw(seed, k);
        const ObservedPath path = scheme == Scheme::euler ? euler_path(params, noise)
                                                          : exact_transition_path(params, noise);
        const EstimationResult est = estimate(path);
        out.theta[k] = (est.theta_hat - params.theta) / sigma;
        out.mu[k] = (est.mu_hat - params.mu) / sigma;
      },
      exec);
  return out;
}

double ks_distance(std::span<const double> samples, double variance) {
  if (samples.empty()) throw InvalidArgument("ks_distance needs at least one sample");
  if (!(variance > 0.0)) throw InvalidArgument("ks_distance needs a positive variance");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double sd = std::sqrt(variance);
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-x[i] / (sd * std::numbers::sqrt2));
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

std::vector<double> lemma_variance_ratio(double theta, HurstParameter h,
                                         std::span<const int> n_values, double tol) {
  if (!(theta < 0.0)) throw InvalidArgument("lemma_variance_ratio requires theta < 0");
  if (h.value() <= 0.5) throw InvalidArgument("lemma_variance_ratio requires H > 1/2");
  std::vector<double> ratios;
  ratios.reserve(n_values.size());
  for (int n : n_values) {
    if (n < 1) throw InvalidArgument("each n must be at least 1");
    const double start = 1.0 - 1.0 / n;
    Integrand f{[=](double s) { return s >= start ? std::exp(theta * (1.0 - s)) : 0.0; }, {}};
    if (start > 0.0) f.breakpoints.push_back(start);
    const double variance = weighted_integral_covariance(f, f, h, tol);
    const double bound = std::abs(std::expm1(-2.0 * theta / n)) * std::pow(n, 1.0 - 2.0 * h.value());
    ratios.push_back(variance / bound);
  }
  return ratios;
}

}  // namespace subfv
