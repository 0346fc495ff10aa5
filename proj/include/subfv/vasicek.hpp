#pragma once

#include <vector>

#include "subfv/grid.hpp"
#include "subfv/subfbm.hpp"

namespace subfv {

/// Coefficients of dX = (mu + theta X) dt + sigma dS^H, X_0 = x0.
struct VasicekParams {
  double mu = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double x0 = 0.0;

  /// Throws InvalidArgument unless all fields are finite and sigma >= 0.
  void validate() const;
};

/// Discretely observed trajectory X(t_0..t_n).
struct ObservedPath {
  TimeGrid grid;
  std::vector<double> values;
};

/// Below this |theta| the (e^{theta t} - 1)/theta factor is replaced by its
/// series limit.
inline constexpr double kThetaSeriesCutoff = 1e-10;

/// (e^{theta dt} - 1) / theta, continuous through theta = 0.
double growth_factor(double theta, double dt);

/// Noiseless solution (mu/theta)(e^{theta t} - 1) + x0 e^{theta t}.
double deterministic_skeleton(double t, const VasicekParams& params);

/// Skeleton evaluated on every grid point.
ObservedPath skeleton_path(const TimeGrid& grid, const VasicekParams& params);

/// Euler scheme X_i = X_{i-1} + (mu + theta X_{i-1}) dt + sigma (S_i - S_{i-1}).
ObservedPath euler_path(const VasicekParams& params, const SubFbmPath& noise);

/// Exact flow map of the drift with a left-point weight on the noise:
/// X_i = X_{i-1} e^{theta dt} + mu (e^{theta dt} - 1)/theta
///       + sigma e^{theta dt} (S_i - S_{i-1}).
ObservedPath exact_transition_path(const VasicekParams& params, const SubFbmPath& noise);

/// max_i |X(t_i)^2 - X0(t_i)^2| against the skeleton of `params`.
double sup_distance_to_skeleton(const ObservedPath& path, const VasicekParams& params);

/// (1/n) sum_{i=1}^n X(t_{i-1})^2, the left Riemann sum of X^2.
double left_riemann_mean_square(const ObservedPath& path);

}  // namespace subfv
