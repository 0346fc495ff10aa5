#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "subfv/grid.hpp"
#include "subfv/parallel.hpp"

namespace subfv {

/// Sampled sub-fBm values S(t_0..t_n) with S(t_0) = 0.
struct SubFbmPath {
  TimeGrid grid;
  HurstParameter hurst;
  std::vector<double> values;

  /// S(t_i) - S(t_{i-1}), i = 1..n.
  double increment(std::size_t i) const { return values[i] - values[i - 1]; }
};

/// Thrown when the covariance matrix cannot be factorised even after the
/// largest permitted diagonal jitter.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Second-order structure. All functions are pure and thread safe.

/// E[S_s S_t] = s^{2H} + t^{2H} - (|s-t|^{2H} + (s+t)^{2H}) / 2.
double covariance(double s, double t, HurstParameter h);

/// E|S_t - S_s|^2 for 0 <= s <= t, derived from the covariance:
/// (t+s)^{2H} + (t-s)^{2H} - 2^{2H-1} (t^{2H} + s^{2H}).
double increment_variance(double s, double t, HurstParameter h);

struct IncrementBounds {
  double lower;
  double upper;
};

/// Two-sided power bound on E|S_t - S_s|^2 with factors
/// min/max(2 - 2^{2H-1}, 1) times (t-s)^{2H}.
IncrementBounds increment_bounds(double s, double t, HurstParameter h);

/// E[(S_t - S_s)(S_v - S_u)] for 0 <= u <= v <= s <= t.
double increment_covariance(double u, double v, double s, double t, HurstParameter h);

/// Covariance of (S_{t_1}, ..., S_{t_n}); the t_0 = 0 row is identically zero
/// and is left out.
Eigen::MatrixXd covariance_matrix(const TimeGrid& grid, HurstParameter h);

/// Lower Cholesky factor of a covariance matrix with bounded jitter.
///
/// Factorisation is first attempted as is. On failure delta * I is added with
/// delta = 1e-12 * max diagonal, growing by 10x up to 1e-8 * max diagonal.
struct CholeskyFactor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;  // absolute delta added to the diagonal, 0 if none
};

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& cov);

/// Exact Gaussian sampler for sub-fBm on a fixed grid.
///
/// The factor is computed once and shared read-only by all draws. Replicate k
/// of a run with a given seed uses its own normal stream, so a replicate's
/// path is the same whichever order, thread or batch it is drawn in.
class PathSampler {
 public:
  PathSampler(TimeGrid grid, HurstParameter h);

  const TimeGrid& grid() const noexcept { return grid_; }
  HurstParameter hurst() const noexcept { return hurst_; }
  const CholeskyFactor& factor() const noexcept { return factor_; }

  /// Writes S(t_0..t_n) of replicate `replicate` into `out` (size n+1).
  void draw_into(std::uint64_t seed, std::uint64_t replicate, std::span<double> out) const;
  SubFbmPath draw(std::uint64_t seed, std::uint64_t replicate) const;

  std::vector<SubFbmPath> sample(std::size_t count, std::uint64_t seed,
                                 Execution exec = Execution::parallel) const;

 private:
  TimeGrid grid_;
  HurstParameter hurst_;
  CholeskyFactor factor_;
};

/// Convenience wrapper: builds a sampler and draws `count` paths.
std::vector<SubFbmPath> sample_paths(const TimeGrid& grid, HurstParameter h, std::size_t count,
                                     std::uint64_t seed, Execution exec = Execution::parallel);

}  // namespace subfv
