#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "subfv/experiment.hpp"
#include "subfv/numerics.hpp"
#include "subfv/validation.hpp"

using namespace subfv;
namespace fs = std::filesystem;

namespace {

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) csv.comments.push_back(line);
    else if (csv.header.empty()) csv.header = split(line);
    else csv.rows.push_back(split(line));
  }
  return csv;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("subfv_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_table(ExperimentKind kind) {
  auto cfg = ExperimentConfig::defaults(kind);
  cfg.n = 200;
  cfg.replicates = 30;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::asymptotic);
  apply_config_text(cfg, "# comment\n\n hurst = 0.65\nn=300\r\nseed=18446744073709551615\n"
                         "scheme=exact_transition\nsigma=2.5e-2\n");
  CHECK(cfg.hurst == 0.65);
  CHECK(cfg.n == 300);
  CHECK(cfg.seed == 18446744073709551615ULL);
  CHECK(cfg.scheme == Scheme::exact_transition);
  CHECK(cfg.sigma == 0.025);
  CHECK(cfg.explicit_keys == std::set<std::string>{"hurst", "n", "seed", "scheme", "sigma"});
  CHECK_NOTHROW(cfg.validate());

  for (const char* bad : {"hurst=abc", "n=1.5", "n=", "sigma=1e999", "replicates=-x",
                          "colour=blue", "no equals sign", "scheme=milstein",
                          "experiment_kind=plot", "seed=-1"}) {
    auto c = ExperimentConfig::defaults(ExperimentKind::table_mu);
    CHECK_THROWS_AS(apply_config_text(c, bad), ConfigError);
  }
  for (const char* invalid : {"replicates=0", "n=1", "hurst=1", "hurst=0.4", "sigma=-0.1"}) {
    auto c = ExperimentConfig::defaults(ExperimentKind::table_mu);
    apply_config_text(c, invalid);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  auto c = ExperimentConfig::defaults(ExperimentKind::path_export);
  CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/subfv.cfg"), ConfigError);
}

TEST_CASE("config echo round-trips") {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::table_theta);
  cfg.sigma = 0.1 + 0.2;
  std::ostringstream os;
  write_config_header(os, cfg);
  auto copy = ExperimentConfig::defaults(ExperimentKind::validate);
  std::string text = os.str();
  for (std::size_t pos = 0; (pos = text.find("# ", pos)) != std::string::npos;) text.erase(pos, 2);
  apply_config_text(copy, text);
  CHECK(copy.echo() == cfg.echo());
  CHECK(copy.sigma == cfg.sigma);

  cfg.theta0 = 0.3;
  std::ostringstream warn;
  write_config_header(warn, cfg);
  CHECK(warn.str().find("# warning=") != std::string::npos);
}

TEST_CASE("path export") {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::path_export);
  const auto dir = scratch("path");
  const auto files = run_and_write(cfg, dir);
  REQUIRE(files.size() == 1);
  const std::string first = slurp(files[0]);
  const auto csv = parse_csv(first);
  CHECK(csv.header == std::vector<std::string>{"t", "x"});
  REQUIRE(csv.rows.size() == static_cast<std::size_t>(cfg.n + 1));
  CHECK(csv.rows[0] == std::vector<std::string>{"0", "9"});
  for (const auto& row : csv.rows) CHECK(std::isfinite(std::stod(row[1])));
  CHECK(csv.comments.size() == cfg.echo().size());

  run_and_write(cfg, dir);
  CHECK(slurp(files[0]) == first);

  // Without noise the exact-transition scheme reproduces the skeleton; the
  // Euler scheme is within its first-order error.
  cfg.sigma = 0.0;
  const VasicekParams p{cfg.mu0, cfg.theta0, 0.0, cfg.x0};
  const auto euler = simulate_path(cfg);
  CHECK(sup_distance_to_skeleton(euler, p) <= 100.0 * 5.0 / cfg.n);
  cfg.scheme = Scheme::exact_transition;
  const auto quiet = simulate_path(cfg);
  for (std::size_t i = 0; i < quiet.values.size(); ++i)
    CHECK(quiet.values[i] == doctest::Approx(deterministic_skeleton(quiet.grid[i], p)).epsilon(1e-12));
  fs::remove_all(dir);
}

TEST_CASE("table presets") {
  const auto mu = small_table(ExperimentKind::table_mu);
  const auto theta = small_table(ExperimentKind::table_theta);
  CHECK(mu.sigma == 0.4);
  CHECK(mu.x0 == 0.0);
  CHECK(ExperimentConfig::defaults(ExperimentKind::table_mu).replicates == 500);
  CHECK(ExperimentConfig::defaults(ExperimentKind::table_mu).n == 1000);
  const auto tm = run_table_experiment(mu, Execution::serial);
  REQUIRE(tm.summary.size() == 12);
  CHECK(tm.summary[0].hurst == 0.65);
  CHECK(tm.summary[0].mu0 == 0.6);
  CHECK(tm.summary[11].hurst == 0.85);
  CHECK(tm.summary[11].true_value == 1.75);
  const auto tt = run_table_experiment(theta, Execution::serial);
  REQUIRE(tt.summary.size() == 12);
  CHECK(tt.summary[0].hurst == 0.55);
  CHECK(tt.summary[3].true_value == -0.95);
  CHECK(tt.replicates.size() == 12u * 30u);

  // One cell picked by overrides matches the same cell of the full sweep.
  auto single = theta;
  single.set("hurst", "0.65");
  single.set("theta0", "-0.8");
  const auto one = run_table_experiment(single, Execution::serial);
  REQUIRE(one.summary.size() == 1);
  CHECK(one.summary[0].mean == tt.summary[5].mean);
  CHECK(one.summary[0].std == tt.summary[5].std);

  auto wrong = theta;
  wrong.experiment_kind = ExperimentKind::asymptotic;
  CHECK_THROWS_AS(run_table_experiment(wrong), ConfigError);
}

TEST_CASE("noiseless single-replicate table is exact") {
  for (auto kind : {ExperimentKind::table_mu, ExperimentKind::table_theta}) {
    auto cfg = small_table(kind);
    cfg.replicates = 1;
    cfg.sigma = 0.0;
    const auto t = run_table_experiment(cfg);
    for (const auto& s : t.summary) {
      CHECK(std::abs(s.mean - s.true_value) <= 1e-9);
      CHECK(s.std == 0.0);
      CHECK(s.replicates == 1);
      CHECK(s.degenerate == 0);
    }
  }
}

TEST_CASE("summary equals recomputation from the replicate file") {
  for (auto kind : {ExperimentKind::table_mu, ExperimentKind::table_theta}) {
    const auto cfg = small_table(kind);
    const auto dir = scratch("table");
    const auto files = run_and_write(cfg, dir);
    REQUIRE(files.size() == 2);
    const auto reps = parse_csv(slurp(files[0]));
    const auto summary = parse_csv(slurp(files[1]));
    CHECK(reps.header == std::vector<std::string>{"hurst", "mu0", "theta0", "replicate", "theta_hat", "mu_hat"});
    CHECK(summary.header == std::vector<std::string>{"hurst", "mu0", "theta0", "true_value", "mean",
                                                     "std", "replicates", "degenerate"});
    CHECK(reps.comments.back().rfind("# cells=", 0) == 0);

    std::map<std::string, std::vector<double>> by_cell;
    const std::size_t col = kind == ExperimentKind::table_mu ? 5 : 4;
    for (const auto& r : reps.rows) by_cell[r[0] + ',' + r[1] + ',' + r[2]].push_back(std::stod(r[col]));
    REQUIRE(summary.rows.size() == by_cell.size());
    for (const auto& s : summary.rows) {
      const auto& xs = by_cell.at(s[0] + ',' + s[1] + ',' + s[2]);
      CHECK(std::stoi(s[6]) == static_cast<int>(xs.size()));
      CHECK(std::abs(std::stod(s[4]) - mean(xs)) <= 1e-12 * std::abs(mean(xs)));
      CHECK(std::abs(std::stod(s[5]) - sample_std(xs)) <= 1e-12 * sample_std(xs));
      CHECK(std::stod(s[5]) >= 0.0);
    }
    fs::remove_all(dir);
  }
}

TEST_CASE("asymptotic report") {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::asymptotic);
  cfg.n = 400;
  cfg.replicates = 60;
  cfg.sigma = 0.05;
  const auto dir = scratch("asym");
  const auto files = run_and_write(cfg, dir);
  REQUIRE(files.size() == 1);
  const std::string first = slurp(files[0]);
  run_and_write(cfg, dir);
  CHECK(slurp(files[0]) == first);

  const auto csv = parse_csv(first);
  CHECK(csv.header == std::vector<std::string>{"quantity", "value"});
  std::map<std::string, double> scalars;
  std::vector<double> theta, mu;
  for (const auto& r : csv.rows) {
    if (r[0] == "theta_sample") theta.push_back(std::stod(r[1]));
    else if (r[0] == "mu_sample") mu.push_back(std::stod(r[1]));
    else scalars[r[0]] = std::stod(r[1]);
  }
  CHECK(scalars.count("regime_warning") == 0);
  REQUIRE(theta.size() == 60);
  REQUIRE(mu.size() == 60);
  CHECK(ks_distance(theta, scalars.at("variance_theta")) == doctest::Approx(scalars.at("ks_theta")).epsilon(1e-12));
  CHECK(ks_distance(mu, scalars.at("variance_mu")) == doctest::Approx(scalars.at("ks_mu")).epsilon(1e-12));
  CHECK(sample_variance(theta) == doctest::Approx(scalars.at("sample_variance_theta")).epsilon(1e-12));

  cfg.sigma = 0.01;
  const auto warned = parse_csv(slurp(run_and_write(cfg, dir)[0]));
  CHECK(warned.rows[0][0] == "regime_warning");
  fs::remove_all(dir);
}

TEST_CASE("output directory failures are I/O errors") {
  const auto blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  auto cfg = ExperimentConfig::defaults(ExperimentKind::path_export);
  CHECK_THROWS_AS(run_and_write(cfg, blocker / "sub"), IoError);
  fs::remove_all(blocker);
}

TEST_CASE("validation suite") {
  const auto cfg = ExperimentConfig::defaults(ExperimentKind::validate);
  const auto results = run_validation_suite(cfg);
  std::ostringstream report;
  print_validation_report(report, results);
  CHECK(all_passed(results));
  if (!all_passed(results)) MESSAGE(report.str());
  CHECK(report.str().find("[PASS] increment_sandwich") != std::string::npos);

  ValidationHooks flipped;
  flipped.increment_variance = [](double s, double t, HurstParameter h) {
    const double a = 2 * h.value();
    return std::pow(t + s, a) - std::pow(t - s, a) - std::pow(2.0, a - 1) * (std::pow(t, a) + std::pow(s, a));
  };
  const auto mutated = run_validation_suite(cfg, flipped);
  CHECK_FALSE(all_passed(mutated));
  for (const auto& r : mutated)
    if (r.name == "increment_sandwich") CHECK_FALSE(r.passed);

  auto brownian = cfg;
  brownian.hurst = 0.5;
  bool saw_rejection = false;
  for (const auto& r : run_validation_suite(brownian))
    if (r.name == "quadrature_vs_kernel") {
      CHECK_FALSE(r.passed);
      CHECK(r.note.rfind("rejected", 0) == 0);
      saw_rejection = true;
    }
  CHECK(saw_rejection);
}
