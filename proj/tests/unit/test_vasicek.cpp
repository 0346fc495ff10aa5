#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "subfv/asymptotics.hpp"
#include "subfv/vasicek.hpp"

using namespace subfv;

namespace {

SubFbmPath zero_noise(int n) { return {TimeGrid(n), HurstParameter(0.75), std::vector<double>(n + 1, 0.0)}; }

double max_skeleton_error(const ObservedPath& path, const VasicekParams& p) {
  double e = 0;
  for (std::size_t i = 0; i < path.values.size(); ++i)
    e = std::max(e, std::abs(path.values[i] - deterministic_skeleton(path.grid[i], p)));
  return e;
}

}  // namespace

TEST_CASE("deterministic skeleton") {
  const VasicekParams p{1.0, -0.7, 0.0, 0.0};
  CHECK(deterministic_skeleton(0.0, VasicekParams{0.3, -2.0, 0.0, 4.5}) == 4.5);
  CHECK(deterministic_skeleton(1.0, VasicekParams{0.4, 0.0, 0.0, 9.0}) == doctest::Approx(9.4).epsilon(1e-15));
  // mpmath closed form and ODE solve agree to 16 digits.
  CHECK(deterministic_skeleton(1.0, p) == doctest::Approx(0.71916385172655785026).epsilon(1e-14));
  // Series branch is continuous with the exponential branch.
  const VasicekParams tiny{0.4, 2e-10, 0.0, 9.0}, tinier{0.4, 5e-11, 0.0, 9.0};
  CHECK(deterministic_skeleton(1.0, tiny) == doctest::Approx(deterministic_skeleton(1.0, tinier)).epsilon(1e-9));
}

TEST_CASE("Euler scheme examples") {
  const auto constant = euler_path(VasicekParams{0.0, 0.0, 0.0, 5.0}, zero_noise(50));
  CHECK(std::all_of(constant.values.begin(), constant.values.end(), [](double x) { return x == 5.0; }));

  const VasicekParams p{1.0, -0.7, 0.0, 0.0};
  CHECK(max_skeleton_error(euler_path(p, zero_noise(1000)), p) <= 5.0 / 1000);

  const PathSampler sampler(TimeGrid(100), HurstParameter(0.75));
  const auto noise = sampler.draw(1, 0);
  const auto pure = euler_path(VasicekParams{0.0, 0.0, 1.0, 0.0}, noise);
  for (std::size_t i = 0; i < noise.values.size(); ++i)
    CHECK(pure.values[i] == doctest::Approx(noise.values[i]).epsilon(1e-14));
}

TEST_CASE("Euler global error is first order") {
  const VasicekParams p{1.0, -0.7, 0.0, 0.5};
  for (int n : {100, 200, 400, 800}) {
    const double coarse = max_skeleton_error(euler_path(p, zero_noise(n)), p);
    const double fine = max_skeleton_error(euler_path(p, zero_noise(2 * n)), p);
    CHECK(coarse / fine >= 1.8);
    CHECK(coarse / fine <= 2.2);
  }
}

TEST_CASE("noise enters the Euler recursion linearly") {
  const PathSampler sampler(TimeGrid(300), HurstParameter(0.65));
  const auto noise = sampler.draw(17, 3);
  VasicekParams p{0.8, -0.9, 0.0, 0.2};
  const auto base = euler_path(p, noise);
  p.sigma = 0.1;
  const auto a = euler_path(p, noise);
  p.sigma = 0.2;
  const auto b = euler_path(p, noise);
  for (std::size_t i = 1; i < base.values.size(); ++i) {
    const double da = a.values[i] - base.values[i], db = b.values[i] - base.values[i];
    if (std::abs(da) > 1e-6) CHECK(db / da == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("exact transition is the flow map of the drift") {
  for (double theta : {-0.95, -0.7, 0.0, 0.3})
    for (int n : {10, 100, 1000}) {
      const VasicekParams p{1.5, theta, 0.0, 0.25};
      const auto path = exact_transition_path(p, zero_noise(n));
      for (std::size_t i = 0; i < path.values.size(); ++i) {
        const double x0 = deterministic_skeleton(path.grid[i], p);
        CHECK(std::abs(path.values[i] - x0) <= 1e-12 * std::abs(x0));
      }
    }
  const VasicekParams from_zero{1.5, -0.9, 0.0, 0.0};
  const auto path = exact_transition_path(from_zero, zero_noise(64));
  CHECK(path.values[0] == 0.0);
  for (std::size_t i = 1; i < path.values.size(); ++i)
    CHECK(path.values[i] == doctest::Approx(deterministic_skeleton(path.grid[i], from_zero)).epsilon(1e-12));

  const VasicekParams flat{0.7, 1e-12, 0.0, 1.0};
  const auto linear = exact_transition_path(flat, zero_noise(40));
  for (std::size_t i = 0; i < linear.values.size(); ++i)
    CHECK(linear.values[i] == doctest::Approx(1.0 + 0.7 * linear.grid[i]).epsilon(1e-12));
}

TEST_CASE("Euler and exact transition agree to first order on shared noise") {
  const VasicekParams p{1.0, -0.9, 0.4, 0.0};
  auto gap = [&](int n) {
    const auto noise = PathSampler(TimeGrid(n), HurstParameter(0.75)).draw(8, 0);
    const auto e = euler_path(p, noise), x = exact_transition_path(p, noise);
    double d = 0;
    for (std::size_t i = 0; i < e.values.size(); ++i) d = std::max(d, std::abs(e.values[i] - x.values[i]));
    return d;
  };
  double c = 0;
  for (int n : {100, 200, 400, 800}) c = std::max(c, n * gap(n));
  CHECK(gap(1000) <= 1.5 * c / 1000);
}

TEST_CASE("sup distance to the skeleton") {
  const VasicekParams p{1.0, -0.7, 0.0, 0.5};
  CHECK(sup_distance_to_skeleton(skeleton_path(TimeGrid(100), p), p) == 0.0);
  const double e100 = sup_distance_to_skeleton(euler_path(p, zero_noise(100)), p);
  const double e1000 = sup_distance_to_skeleton(euler_path(p, zero_noise(1000)), p);
  CHECK(e1000 < e100);

  const auto noise = PathSampler(TimeGrid(1000), HurstParameter(0.75)).draw(21, 0);
  double previous = INFINITY;
  for (double sigma : {0.4, 0.04, 0.004}) {
    const VasicekParams q{1.0, -0.7, sigma, 0.5};
    const double d = sup_distance_to_skeleton(euler_path(q, noise), q);
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("left Riemann mean square approaches the skeleton integral") {
  const VasicekParams p{1.0, -0.7, 1e-3, 0.0};
  const auto noise = PathSampler(TimeGrid(2000), HurstParameter(0.75)).draw(5, 0);
  const double riemann = left_riemann_mean_square(euler_path(p, noise));
  const double d2 = deterministic_moments(p).d2;
  CHECK(std::abs(riemann - d2) / d2 <= 0.01);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(euler_path(VasicekParams{0, 0, -1.0, 0}, zero_noise(5)), InvalidArgument);
  CHECK_THROWS_AS(euler_path(VasicekParams{NAN, 0, 1.0, 0}, zero_noise(5)), InvalidArgument);
}
