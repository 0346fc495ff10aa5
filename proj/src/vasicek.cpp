#include "subfv/vasicek.hpp"

#include <algorithm>
#include <cmath>

namespace subfv {

void VasicekParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(theta) || !std::isfinite(sigma) || !std::isfinite(x0))
    throw InvalidArgument("Vasicek parameters must be finite");
  if (sigma < 0.0) throw InvalidArgument("sigma must be non-negative");
}

double growth_factor(double theta, double dt) {
  if (std::abs(theta) < kThetaSeriesCutoff) return dt * (1.0 + 0.5 * theta * dt);
  return std::expm1(theta * dt) / theta;
}

double deterministic_skeleton(double t, const VasicekParams& params) {
  if (std::abs(params.theta) < kThetaSeriesCutoff) return params.x0 + params.mu * t;
  return params.mu * growth_factor(params.theta, t) + params.x0 * std::exp(params.theta * t);
}

ObservedPath skeleton_path(const TimeGrid& grid, const VasicekParams& params) {
  ObservedPath path{grid, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < path.values.size(); ++i)
    path.values[i] = deterministic_skeleton(grid[i], params);
  return path;
}

ObservedPath euler_path(const VasicekParams& params, const SubFbmPath& noise) {
  params.validate();
  const TimeGrid& grid = noise.grid;
  const double dt = grid.dt();
  ObservedPath path{grid, std::vector<double>(grid.size())};
  auto& x = path.values;
  x[0] = params.x0;
  for (std::size_t i = 1; i < x.size(); ++i)
    x[i] = x[i - 1] + (params.mu + params.theta * x[i - 1]) * dt + params.sigma * noise.increment(i);
  return path;
}

ObservedPath exact_transition_path(const VasicekParams& params, const SubFbmPath& noise) {
  params.validate();
  const TimeGrid& grid = noise.grid;
  const double dt = grid.dt();
  const double decay = std::exp(params.theta * dt);
  const double drift = params.mu * growth_factor(params.theta, dt);
  ObservedPath path{grid, std::vector<double>(grid.size())};
  auto& x = path.values;
  x[0] = params.x0;
  for (std::size_t i = 1; i < x.size(); ++i)
    x[i] = x[i - 1] * decay + drift + params.sigma * decay * noise.increment(i);
  return path;
}

double sup_distance_to_skeleton(const ObservedPath& path, const VasicekParams& params) {
  double sup = 0.0;
  for (std::size_t i = 0; i < path.values.size(); ++i) {
    const double x = path.values[i];
    const double x0 = deterministic_skeleton(path.grid[i], params);
    sup = std::max(sup, std::abs(x * x - x0 * x0));
  }
  return sup;
}

double left_riemann_mean_square(const ObservedPath& path) {
  double acc = 0.0;
  const std::size_t n = path.values.size() - 1;
  for (std::size_t i = 0; i < n; ++i) acc += path.values[i] * path.values[i];
  return acc / static_cast<double>(n);
}

}  // namespace subfv
