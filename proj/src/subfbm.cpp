#include "subfv/subfbm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subfv/rng.hpp"

namespace subfv {

HurstParameter::HurstParameter(double h) : h_(h) {
  if (!(h >= 0.5 && h < 1.0)) {
    std::ostringstream msg;
    msg << "Hurst parameter must lie in [0.5, 1), got " << h;
    throw InvalidArgument(msg.str());
  }
}

TimeGrid::TimeGrid(int steps) : n_(steps) {
  if (steps < 1) throw InvalidArgument("time grid needs at least one step");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = (*this)[i];
  return t;
}

namespace {

double pow2h(double x, double two_h) { return x == 0.0 ? 0.0 : std::pow(x, two_h); }

void require_time(double t, const char* name) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw InvalidArgument(std::string("time ") + name + " must be finite and non-negative");
}

}  // namespace

double covariance(double s, double t, HurstParameter h) {
  require_time(s, "s");
  require_time(t, "t");
  if (s == 0.0 || t == 0.0) return 0.0;
  const double a = 2.0 * h.value();
  return pow2h(s, a) + pow2h(t, a) - 0.5 * (pow2h(std::abs(s - t), a) + pow2h(s + t, a));
}

double increment_variance(double s, double t, HurstParameter h) {
  require_time(s, "s");
  require_time(t, "t");
  if (s > t) throw InvalidArgument("increment_variance requires s <= t");
  const double a = 2.0 * h.value();
  return pow2h(t + s, a) + pow2h(t - s, a) - std::pow(2.0, a - 1.0) * (pow2h(t, a) + pow2h(s, a));
}

IncrementBounds increment_bounds(double s, double t, HurstParameter h) {
  require_time(s, "s");
  require_time(t, "t");
  if (s > t) throw InvalidArgument("increment_bounds requires s <= t");
  const double a = 2.0 * h.value();
  const double factor = 2.0 - std::pow(2.0, a - 1.0);
  const double scale = pow2h(t - s, a);
  return {std::min(factor, 1.0) * scale, std::max(factor, 1.0) * scale};
}

double increment_covariance(double u, double v, double s, double t, HurstParameter h) {
  require_time(u, "u");
  if (!(u <= v && v <= s && s <= t))
    throw InvalidArgument("increment_covariance requires 0 <= u <= v <= s <= t");
  const double a = 2.0 * h.value();
  auto p = [a](double x) { return pow2h(x, a); };
  return 0.5 * (p(t + u) + p(t - u) + p(s + v) + p(s - v) - p(t + v) - p(t - v) - p(s + u) -
                p(s - u));
}

Eigen::MatrixXd covariance_matrix(const TimeGrid& grid, HurstParameter h) {
  const int n = grid.steps();
  Eigen::MatrixXd c(n, n);
  for (int j = 0; j < n; ++j) {
    const double tj = grid[static_cast<std::size_t>(j) + 1];
    for (int i = j; i < n; ++i) {
      const double v = covariance(grid[static_cast<std::size_t>(i) + 1], tj, h);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0)
    throw InvalidArgument("covariance matrix must be square and non-empty");
  const double max_diag = cov.diagonal().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return {llt.matrixL(), 0.0};

  for (double rel = 1e-12; rel <= 1e-8 * (1.0 + 1e-9); rel *= 10.0) {
    const double delta = rel * max_diag;
    Eigen::MatrixXd jittered = cov;
    jittered.diagonal().array() += delta;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return {llt.matrixL(), delta};
  }
  throw FactorizationError("covariance matrix is not positive definite even with jitter 1e-8 * "
                           "max diagonal");
}

PathSampler::PathSampler(TimeGrid grid, HurstParameter h)
    : grid_(grid), hurst_(h), factor_(cholesky_with_jitter(covariance_matrix(grid, h))) {}

void PathSampler::draw_into(std::uint64_t seed, std::uint64_t replicate,
                            std::span<double> out) const {
  const auto n = static_cast<Eigen::Index>(grid_.steps());
  if (out.size() != grid_.size()) throw InvalidArgument("output span must hold n+1 values");
  Eigen::VectorXd z(n);
  NormalStream stream(seed, replicate);
  stream.fill(std::span<double>(z.data(), static_cast<std::size_t>(n)));
  out[0] = 0.0;
  Eigen::Map<Eigen::VectorXd> tail(out.data() + 1, n);
  tail.noalias() = factor_.lower.triangularView<Eigen::Lower>() * z;
}

SubFbmPath PathSampler::draw(std::uint64_t seed, std::uint64_t replicate) const {
  SubFbmPath path{grid_, hurst_, std::vector<double>(grid_.size())};
  draw_into(seed, replicate, path.values);
  return path;
}

std::vector<SubFbmPath> PathSampler::sample(std::size_t count, std::uint64_t seed,
                                            Execution exec) const {
  if (count < 1) throw InvalidArgument("path count must be at least 1");
  std::vector<SubFbmPath> paths(count, SubFbmPath{grid_, hurst_, {}});
  for_each_replicate(
      count,
      [&](std::size_t k) {
        paths[k].values.resize(grid_.size());
        draw_into(seed, k, paths[k].values);
      },
      exec);
  return paths;
}

std::vector<SubFbmPath> sample_paths(const TimeGrid& grid, HurstParameter h, std::size_t count,
                                     std::uint64_t seed, Execution exec) {
  return PathSampler(grid, h).sample(count, seed, exec);
}

}  // namespace subfv
