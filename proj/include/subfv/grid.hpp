#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace subfv {

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hurst index of a sub-fractional Brownian motion.
///
/// Accepts 0.5 <= h < 1. The value 0.5 (standard Brownian motion) is kept
/// for validation runs; operations that need the long-memory kernel reject it.
class HurstParameter {
 public:
  explicit HurstParameter(double h);

  double value() const noexcept { return h_; }
  bool is_brownian() const noexcept { return h_ == 0.5; }

  friend bool operator==(const HurstParameter&, const HurstParameter&) = default;

 private:
  double h_;
};

/// Uniform partition t_i = i/n of [0, 1].
class TimeGrid {
 public:
  explicit TimeGrid(int steps);

  int steps() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) + 1; }
  double dt() const noexcept { return 1.0 / n_; }
  double operator[](std::size_t i) const noexcept {
    return static_cast<double>(i) / n_;
  }
  std::vector<double> points() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  int n_;
};

}  // namespace subfv
