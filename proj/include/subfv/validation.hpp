#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "subfv/experiment.hpp"
#include "subfv/subfbm.hpp"

namespace subfv {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

/// Replaceable kernels, so tests can confirm that a broken kernel is caught.
struct ValidationHooks {
  std::function<double(double, double, HurstParameter)> increment_variance =
      [](double s, double t, HurstParameter h) { return subfv::increment_variance(s, t, h); };
};

/// Runs the invariant checks of every module. cfg.hurst feeds the sampler,
/// quadrature and sandwich checks; cfg.seed drives every random draw.
std::vector<CheckResult> run_validation_suite(const ExperimentConfig& cfg,
                                              const ValidationHooks& hooks = {});

/// "[PASS] name: measured=... threshold=..." per check.
void print_validation_report(std::ostream& os, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace subfv
