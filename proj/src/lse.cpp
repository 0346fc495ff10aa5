#include "subfv/lse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subfv/numerics.hpp"

namespace subfv {

namespace {

void require_steps(const ObservedPath& path) {
  if (path.values.size() != path.grid.size())
    throw InvalidArgument("path length does not match its grid");
  if (path.grid.steps() < 2) throw InvalidArgument("estimation needs at least two steps");
}

double max_abs(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

double contrast(double theta, double mu, const ObservedPath& path) {
  require_steps(path);
  const double dt = path.grid.dt();
  const auto& x = path.values;
  CompensatedSum acc;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double r = x[i] - x[i - 1] - (mu + theta * x[i - 1]) * dt;
    acc += r * r;
  }
  return acc.value();
}

EstimationResult estimate(const ObservedPath& path) {
  require_steps(path);
  const auto& x = path.values;
  const std::size_t n = x.size() - 1;
  const double nd = static_cast<double>(n);

  // Centred form of the normal-equation solution: with m the mean of the
  // pre-sample X_0..X_{n-1},
  //   theta_hat = sum dX_i (X_{i-1} - m) / ((1/n) sum (X_{i-1} - m)^2),
  //   mu_hat    = sum dX_i - theta_hat m.
  CompensatedSum sx;
  for (std::size_t i = 0; i < n; ++i) sx += x[i];
  const double m = sx.value() / nd;

  CompensatedSum sdd, sdx, sd;
  for (std::size_t i = 1; i <= n; ++i) {
    const double c = x[i - 1] - m;
    const double d = x[i] - x[i - 1];
    sdd += c * c;
    sdx += d * c;
    sd += d;
  }
  const double denominator = sdd.value() / nd;
  const double scale = max_abs(x);
  if (!(denominator > kDegenerateRelTol * scale * scale)) {
    std::ostringstream msg;
    msg << "pre-sample is numerically constant (denominator " << denominator
        << "); the normal equations are singular";
    throw DegeneratePath(msg.str());
  }

  EstimationResult r;
  r.denominator = denominator;
  r.theta_hat = sdx.value() / denominator;
  r.mu_hat = sd.value() - r.theta_hat * m;

  const double dt = path.grid.dt();
  CompensatedSum res_mu, res_theta;
  for (std::size_t i = 1; i <= n; ++i) {
    const double e = x[i] - x[i - 1] - (r.mu_hat + r.theta_hat * x[i - 1]) * dt;
    res_mu += e;
    res_theta += e * x[i - 1];
  }
  r.residual_mu = res_mu.value();
  r.residual_theta = res_theta.value();
  return r;
}

ErrorTerms error_decomposition(const ObservedPath& path, const VasicekParams& params0,
                               const SubFbmPath& noise) {
  require_steps(path);
  if (noise.values.size() != path.values.size())
    throw InvalidArgument("noise and path live on different grids");
  const auto& x = path.values;
  const std::size_t n = x.size() - 1;
  const double nd = static_cast<double>(n);

  CompensatedSum sx, sxx, sxds, s_total;
  for (std::size_t i = 1; i <= n; ++i) {
    const double xp = x[i - 1];
    const double ds = noise.increment(i);
    sx += xp;
    sxx += xp * xp;
    sxds += xp * ds;
    s_total += ds;
  }
  const double s1 = s_total.value();
  const double denom = sxx.value() / nd - (sx.value() / nd) * (sx.value() / nd);
  const double scale = max_abs(x);
  if (!(denom > kDegenerateRelTol * scale * scale))
    throw DegeneratePath("pre-sample is numerically constant; error terms undefined");

  ErrorTerms e;
  e.theta = params0.sigma * (sxds.value() - sx.value() * s1 / nd) / denom;
  e.mu = params0.sigma * (sxx.value() * s1 - sx.value() * sxds.value()) / (nd * denom);
  return e;
}

}  // namespace subfv
