#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfv/asymptotics.hpp"
#include "subfv/parallel.hpp"

namespace subfv {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { path_export, table_mu, table_theta, asymptotic, validate };

std::string to_string(ExperimentKind kind);
std::string to_string(Scheme scheme);

/// A resolved experiment description.
struct ExperimentConfig {
  double hurst = 0.75;
  int n = 1000;
  int replicates = 500;
  double sigma = 0.4;
  double x0 = 0.0;
  double mu0 = 1.0;
  double theta0 = -1.0;
  std::uint64_t seed = 42;
  ExperimentKind experiment_kind = ExperimentKind::validate;
  Scheme scheme = Scheme::euler;

  /// Keys given explicitly by a config file or an override. Table sweeps
  /// collapse an axis to the configured value when its key is listed here.
  std::set<std::string> explicit_keys;

  /// Defaults for a subcommand.
  static ExperimentConfig defaults(ExperimentKind kind);

  /// Sets one field from its text form; throws ConfigError.
  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError unless replicates >= 1, n >= 2, 0.5 <= hurst < 1,
  /// sigma >= 0 and every number is finite.
  void validate() const;

  /// `key=value` lines in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Applies `key=value` lines ('#' starts a comment, blank lines ignored).
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& file);

/// Shortest round-tripping form with 17 significant digits.
std::string format_double(double x);

// Results ------------------------------------------------------------------

struct ReplicateRow {
  double hurst;
  double mu0;
  double theta0;
  int replicate;
  double theta_hat;
  double mu_hat;
};

struct SummaryRow {
  double hurst;
  double mu0;
  double theta0;
  double true_value;
  double mean;
  double std;  // n-1 denominator, 0 for a single replicate
  int replicates;
  int degenerate;
};

struct TableResult {
  std::vector<ReplicateRow> replicates;
  std::vector<SummaryRow> summary;
};

struct AsymptoticReport {
  LimitLaw law;
  LimitSamples samples;
  double sample_variance_theta = 0.0;
  double sample_variance_mu = 0.0;
  double mean_theta = 0.0;
  double mean_mu = 0.0;
  double ks_theta = 0.0;
  double ks_mu = 0.0;
};

/// One simulated trajectory on the configured grid.
ObservedPath simulate_path(const ExperimentConfig& cfg);

/// Sweep of (hurst, true value) cells for table_mu / table_theta. Degenerate
/// replicates are skipped and counted; 1% or more of a cell throws ConfigError.
TableResult run_table_experiment(const ExperimentConfig& cfg, Execution exec = Execution::parallel);

AsymptoticReport run_asymptotic_experiment(const ExperimentConfig& cfg,
                                           Execution exec = Execution::parallel);

// CSV writers. Every file starts with the '#' config echo.

void write_config_header(std::ostream& os, const ExperimentConfig& cfg);
void write_path_csv(std::ostream& os, const ExperimentConfig& cfg, const ObservedPath& path);
void write_replicates_csv(std::ostream& os, const ExperimentConfig& cfg, const TableResult& t);
void write_summary_csv(std::ostream& os, const ExperimentConfig& cfg, const TableResult& t);
void write_asymptotic_csv(std::ostream& os, const ExperimentConfig& cfg,
                          const AsymptoticReport& r);

/// Runs the experiment named by cfg.experiment_kind (everything but
/// validate) and writes its files under `out_dir`. Returns the paths written.
std::vector<std::filesystem::path> run_and_write(const ExperimentConfig& cfg,
                                                 const std::filesystem::path& out_dir,
                                                 Execution exec = Execution::parallel);

}  // namespace subfv
