#include "subfv/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "subfv/lse.hpp"
#include "subfv/numerics.hpp"
#include "subfv/subfbm.hpp"

namespace subfv {

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::path_export: return "path_export";
    case ExperimentKind::table_mu: return "table_mu";
    case ExperimentKind::table_theta: return "table_theta";
    case ExperimentKind::asymptotic: return "asymptotic";
    case ExperimentKind::validate: return "validate";
  }
  return "unknown";
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::euler ? "euler" : "exact_transition";
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("invalid number for " + key + ": '" + text + "'");
  return v;
}

template <class Int>
Int parse_integer(const std::string& key, const std::string& text) {
  Int v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("invalid integer for " + key + ": '" + text + "'");
  return v;
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment_kind = kind;
  switch (kind) {
    case ExperimentKind::path_export:
      // Figure-style trajectory; theta is not reported there, -1 is our pick.
      c.x0 = 9.0;
      c.mu0 = 0.4;
      c.sigma = 0.08;
      c.hurst = 0.85;
      c.theta0 = -1.0;
      c.replicates = 1;
      break;
    case ExperimentKind::table_mu:
      c.theta0 = -1.0;
      c.mu0 = 1.0;
      c.hurst = 0.85;
      break;
    case ExperimentKind::table_theta:
      c.mu0 = 1.0;
      c.theta0 = -0.9;
      c.hurst = 0.75;
      break;
    case ExperimentKind::asymptotic:
      c.theta0 = -0.7;
      c.mu0 = 1.0;
      c.x0 = 0.0;
      c.hurst = 0.75;
      c.sigma = 0.01;
      c.n = 2000;
      c.replicates = 500;
      break;
    case ExperimentKind::validate:
      break;
  }
  return c;
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "hurst") hurst = parse_real(key, value);
  else if (key == "n") n = parse_integer<int>(key, value);
  else if (key == "replicates") replicates = parse_integer<int>(key, value);
  else if (key == "sigma") sigma = parse_real(key, value);
  else if (key == "x0") x0 = parse_real(key, value);
  else if (key == "mu0") mu0 = parse_real(key, value);
  else if (key == "theta0") theta0 = parse_real(key, value);
  else if (key == "seed") seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "experiment_kind") {
    static const std::map<std::string, ExperimentKind> kinds{
        {"path_export", ExperimentKind::path_export}, {"table_mu", ExperimentKind::table_mu},
        {"table_theta", ExperimentKind::table_theta}, {"asymptotic", ExperimentKind::asymptotic},
        {"validate", ExperimentKind::validate}};
    auto it = kinds.find(value);
    if (it == kinds.end()) throw ConfigError("unknown experiment_kind '" + value + "'");
    experiment_kind = it->second;
  } else if (key == "scheme") {
    if (value == "euler") scheme = Scheme::euler;
    else if (value == "exact_transition") scheme = Scheme::exact_transition;
    else throw ConfigError("unknown scheme '" + value + "'");
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
  explicit_keys.insert(key);
}

void ExperimentConfig::validate() const {
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  if (n < 2) throw ConfigError("n must be at least 2");
  for (double v : {hurst, sigma, x0, mu0, theta0})
    if (!std::isfinite(v)) throw ConfigError("numeric fields must be finite");
  if (!(hurst >= 0.5 && hurst < 1.0)) throw ConfigError("hurst must lie in [0.5, 1)");
  if (sigma < 0.0) throw ConfigError("sigma must be non-negative");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  return {{"experiment_kind", to_string(experiment_kind)},
          {"hurst", format_double(hurst)},
          {"n", std::to_string(n)},
          {"replicates", std::to_string(replicates)},
          {"sigma", format_double(sigma)},
          {"x0", format_double(x0)},
          {"mu0", format_double(mu0)},
          {"theta0", format_double(theta0)},
          {"seed", std::to_string(seed)},
          {"scheme", to_string(scheme)}};
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    cfg.set(trim(t.substr(0, eq)), t.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

VasicekParams params_of(const ExperimentConfig& cfg, double mu0, double theta0) {
  return {mu0, theta0, cfg.sigma, cfg.x0};
}

ObservedPath simulate(const VasicekParams& p, const SubFbmPath& noise, Scheme scheme) {
  return scheme == Scheme::euler ? euler_path(p, noise) : exact_transition_path(p, noise);
}

struct Cell {
  double hurst;
  double mu0;
  double theta0;
};

std::vector<double> hurst_axis(const ExperimentConfig& cfg) {
  if (cfg.explicit_keys.count("hurst")) return {cfg.hurst};
  if (cfg.experiment_kind == ExperimentKind::table_mu) return {0.65, 0.75, 0.85};
  return {0.55, 0.65, 0.75};
}

std::vector<Cell> table_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  const bool mu_table = cfg.experiment_kind == ExperimentKind::table_mu;
  std::vector<double> values;
  if (mu_table)
    values = cfg.explicit_keys.count("mu0") ? std::vector<double>{cfg.mu0}
                                            : std::vector<double>{0.6, 1.0, 1.5, 1.75};
  else
    values = cfg.explicit_keys.count("theta0") ? std::vector<double>{cfg.theta0}
                                               : std::vector<double>{-0.7, -0.8, -0.9, -0.95};
  for (double h : hurst_axis(cfg))
    for (double v : values)
      cells.push_back(mu_table ? Cell{h, v, cfg.theta0} : Cell{h, cfg.mu0, v});
  return cells;
}

}  // namespace

ObservedPath simulate_path(const ExperimentConfig& cfg) {
  cfg.validate();
  const PathSampler sampler(TimeGrid(cfg.n), HurstParameter(cfg.hurst));
  return simulate(params_of(cfg, cfg.mu0, cfg.theta0), sampler.draw(cfg.seed, 0), cfg.scheme);
}

TableResult run_table_experiment(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  const bool mu_table = cfg.experiment_kind == ExperimentKind::table_mu;
  if (!mu_table && cfg.experiment_kind != ExperimentKind::table_theta)
    throw ConfigError("run_table_experiment needs experiment_kind table_mu or table_theta");

  // Every cell reuses the same replicate streams, so a single-cell run
  // reproduces the matching cell of the full sweep.
  TableResult out;
  std::map<double, PathSampler> samplers;
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  for (const Cell& cell : table_cells(cfg)) {
    auto it = samplers.find(cell.hurst);
    if (it == samplers.end())
      it = samplers.emplace(cell.hurst, PathSampler(TimeGrid(cfg.n), HurstParameter(cell.hurst)))
               .first;
    const PathSampler& sampler = it->second;
    const VasicekParams params = params_of(cfg, cell.mu0, cell.theta0);

    std::vector<EstimationResult> fits(reps);
    std::vector<char> degenerate(reps, 0);
    for_each_replicate(
        reps,
        [&](std::size_t k) {
          try {
            fits[k] = estimate(simulate(params, sampler.draw(cfg.seed, k), cfg.scheme));
          } catch (const DegeneratePath&) {
            degenerate[k] = 1;
          }
        },
        exec);

    std::vector<double> target;
    int bad = 0;
    for (std::size_t k = 0; k < reps; ++k) {
      if (degenerate[k]) {
        ++bad;
        continue;
      }
      out.replicates.push_back({cell.hurst, cell.mu0, cell.theta0, static_cast<int>(k),
                                fits[k].theta_hat, fits[k].mu_hat});
      target.push_back(mu_table ? fits[k].mu_hat : fits[k].theta_hat);
    }
    if (100 * bad >= cfg.replicates) {
      std::ostringstream msg;
      msg << bad << " of " << cfg.replicates << " replicates had a degenerate path (hurst="
          << cell.hurst << ", mu0=" << cell.mu0 << ", theta0=" << cell.theta0 << ")";
      throw ConfigError(msg.str());
    }
    out.summary.push_back({cell.hurst, cell.mu0, cell.theta0, mu_table ? cell.mu0 : cell.theta0,
                           mean(target), sample_std(target), static_cast<int>(target.size()),
                           bad});
  }
  return out;
}

AsymptoticReport run_asymptotic_experiment(const ExperimentConfig& cfg, Execution exec) {
  cfg.validate();
  const HurstParameter h(cfg.hurst);
  const VasicekParams params = params_of(cfg, cfg.mu0, cfg.theta0);
  AsymptoticReport r;
  r.law = limit_law(params, h);
  r.samples = empirical_limit_sample(params, h, cfg.n, cfg.sigma,
                                     static_cast<std::size_t>(cfg.replicates), cfg.seed,
                                     cfg.scheme, exec);
  r.sample_variance_theta = sample_variance(r.samples.theta);
  r.sample_variance_mu = sample_variance(r.samples.mu);
  r.mean_theta = mean(r.samples.theta);
  r.mean_mu = mean(r.samples.mu);
  r.ks_theta = ks_distance(r.samples.theta, r.law.variance_theta);
  r.ks_mu = ks_distance(r.samples.mu, r.law.variance_mu);
  return r;
}

void write_config_header(std::ostream& os, const ExperimentConfig& cfg) {
  for (const auto& [k, v] : cfg.echo()) os << "# " << k << '=' << v << '\n';
  if (cfg.theta0 > 0.0)
    os << "# warning=theta0 > 0: consistency and limit results are only validated for "
          "theta0 < 0\n";
}

void write_path_csv(std::ostream& os, const ExperimentConfig& cfg, const ObservedPath& path) {
  write_config_header(os, cfg);
  os << "t,x\n";
  for (std::size_t i = 0; i < path.values.size(); ++i)
    os << format_double(path.grid[i]) << ',' << format_double(path.values[i]) << '\n';
}

namespace {

void write_sweep_header(std::ostream& os, const ExperimentConfig& cfg) {
  write_config_header(os, cfg);
  std::string cells;
  for (const Cell& c : table_cells(cfg)) {
    if (!cells.empty()) cells += ' ';
    cells += format_double(c.hurst) + ':' +
             format_double(cfg.experiment_kind == ExperimentKind::table_mu ? c.mu0 : c.theta0);
  }
  os << "# cells=" << cells << '\n';
}

}  // namespace

void write_replicates_csv(std::ostream& os, const ExperimentConfig& cfg, const TableResult& t) {
  write_sweep_header(os, cfg);
  os << "hurst,mu0,theta0,replicate,theta_hat,mu_hat\n";
  for (const auto& r : t.replicates)
    os << format_double(r.hurst) << ',' << format_double(r.mu0) << ',' << format_double(r.theta0)
       << ',' << r.replicate << ',' << format_double(r.theta_hat) << ','
       << format_double(r.mu_hat) << '\n';
}

void write_summary_csv(std::ostream& os, const ExperimentConfig& cfg, const TableResult& t) {
  write_sweep_header(os, cfg);
  os << "hurst,mu0,theta0,true_value,mean,std,replicates,degenerate\n";
  for (const auto& s : t.summary)
    os << format_double(s.hurst) << ',' << format_double(s.mu0) << ',' << format_double(s.theta0)
       << ',' << format_double(s.true_value) << ',' << format_double(s.mean) << ','
       << format_double(s.std) << ',' << s.replicates << ',' << s.degenerate << '\n';
}

void write_asymptotic_csv(std::ostream& os, const ExperimentConfig& cfg,
                          const AsymptoticReport& r) {
  write_config_header(os, cfg);
  os << "quantity,value\n";
  auto row = [&os](const char* name, double v) { os << name << ',' << format_double(v) << '\n'; };
  if (r.samples.regime_warning) row("regime_warning", cfg.n * cfg.sigma);
  row("d1", r.law.d1);
  row("d2", r.law.d2);
  row("denom", r.law.denom);
  row("variance_theta", r.law.variance_theta);
  row("variance_mu", r.law.variance_mu);
  row("sample_variance_theta", r.sample_variance_theta);
  row("sample_variance_mu", r.sample_variance_mu);
  row("mean_theta", r.mean_theta);
  row("mean_mu", r.mean_mu);
  row("ks_theta", r.ks_theta);
  row("ks_mu", r.ks_mu);
  for (double v : r.samples.theta) row("theta_sample", v);
  for (double v : r.samples.mu) row("mu_sample", v);
}

namespace {

template <class Writer>
std::filesystem::path write_file(const std::filesystem::path& file, Writer&& writer) {
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + file.string() + " for writing");
  writer(os);
  os.flush();
  if (!os) throw IoError("failed writing " + file.string());
  return file;
}

}  // namespace

std::vector<std::filesystem::path> run_and_write(const ExperimentConfig& cfg,
                                                 const std::filesystem::path& out_dir,
                                                 Execution exec) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  switch (cfg.experiment_kind) {
    case ExperimentKind::path_export: {
      const ObservedPath path = simulate_path(cfg);
      written.push_back(write_file(out_dir / "path.csv",
                                   [&](std::ostream& os) { write_path_csv(os, cfg, path); }));
      break;
    }
    case ExperimentKind::table_mu:
    case ExperimentKind::table_theta: {
      const TableResult t = run_table_experiment(cfg, exec);
      const std::string stem = to_string(cfg.experiment_kind);
      written.push_back(write_file(out_dir / (stem + ".csv"),
                                   [&](std::ostream& os) { write_replicates_csv(os, cfg, t); }));
      written.push_back(write_file(out_dir / (stem + "_summary.csv"),
                                   [&](std::ostream& os) { write_summary_csv(os, cfg, t); }));
      break;
    }
    case ExperimentKind::asymptotic: {
      const AsymptoticReport r = run_asymptotic_experiment(cfg, exec);
      written.push_back(write_file(out_dir / "asymptotic.csv",
                                   [&](std::ostream& os) { write_asymptotic_csv(os, cfg, r); }));
      break;
    }
    case ExperimentKind::validate:
      throw ConfigError("validate writes no files; use run_validation_suite");
  }
  return written;
}

}  // namespace subfv
