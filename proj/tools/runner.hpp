// Run configuration and subcommand drivers behind the quasispec CLI. Kept as
// a library so tests can byte-compare payloads without spawning processes.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quasispec/potential.hpp"
#include "quasispec/rationals.hpp"

namespace quasispec::cli {

// Invalid or inconsistent configuration: CLI exits with code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // sampling function: Fourier coefficients (Hermitian completion on load)
  std::map<int, std::complex<double>> coeffs = {{1, {1.0, 0.0}}};  // 2 cos(theta)
  double eta = 1.0;
  std::optional<int> degree = 1;

  // frequency: rational p/q or an irrational token/decimal plus its ladder
  std::optional<Rational> rational;
  std::string alpha_token = "golden";
  int convergent_count = 8;
  double theta = 0.0;

  // grids and probe parameters
  std::optional<double> E_min, E_max;  // default: +-enclosing energy bound
  int E_count = 101;
  double E_probe = 1.0;
  int theta_count = 1024;
  double eps = 0.25;
  std::vector<double> eps_list = {0.5, 0.25, 0.1};
  double gamma_tol = 0.05;
  std::int64_t q_max = 200;
  std::vector<int> n_list = {21, 34, 55, 89, 144, 233};
  std::size_t k_grid_size = 4096;
  int farey_order = 12;
  std::string lyapunov_method = "rational";  // or "mn"

  // io
  std::string out = "-";
  std::string format;  // "" = per-command default, else "csv" / "json"
  unsigned threads = 0;
};

RunConfig default_config();
RunConfig load_config_file(const std::string& path);  // throws ConfigError

struct RunResult {
  int exit_code = 0;
  std::string payload;  // what --out receives
  std::string human;    // short stderr summary (not part of the payload)
};

const std::vector<std::string>& subcommand_names();

// Executes one subcommand; never writes files. Throws ConfigError for bad
// configs; other exceptions indicate internal failures.
RunResult run_subcommand(const std::string& name, const RunConfig& cfg);

// Full CLI path: applies cfg.threads, runs, writes payload to cfg.out ("-" =
// stdout) and the human summary to stderr. Returns the process exit code.
int run_and_write(const std::string& name, const RunConfig& cfg);

}  // namespace quasispec::cli
