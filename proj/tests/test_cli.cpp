#include <doctest.h>

#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quasispec/parallel.hpp"
#include "runner.hpp"

using namespace quasispec;
using namespace quasispec::cli;
namespace fs = std::filesystem;

namespace {

// Scratch directory, removed on scope exit.
struct TmpDir {
  fs::path dir;
  TmpDir() {
    dir = fs::temp_directory_path() /
          ("quasispec-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TmpDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << text;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

RunConfig bands_config() {
  RunConfig cfg = default_config();
  cfg.rational = Rational(1, 2);
  return cfg;
}

}  // namespace

TEST_CASE("subcommand registry") {
  const auto& names = subcommand_names();
  REQUIRE(names.size() == 11);
  CHECK(names.front() == "bands");
  CHECK(names.back() == "verify-all");
  for (const char* want : {"sminus", "upsilon", "theorem3", "lyapunov", "herman",
                           "aset", "conjecture", "fourier-check", "butterfly"})
    CHECK(std::count(names.begin(), names.end(), std::string(want)) == 1);
}

TEST_CASE("bands: csv payload, exit code, reproducibility") {
  const RunConfig cfg = bands_config();
  const auto r1 = run_subcommand("bands", cfg);
  CHECK(r1.exit_code == 0);
  CHECK(r1.payload.rfind("# quasispec bands", 0) == 0);
  CHECK(r1.payload.find("band_index,E_min,E_max") != std::string::npos);
  CHECK_FALSE(r1.human.empty());

  const auto r2 = run_subcommand("bands", cfg);
  CHECK(r1.payload == r2.payload);  // byte identical on repeat

  set_thread_limit(1);
  const auto s1 = run_subcommand("bands", cfg);
  set_thread_limit(4);
  const auto s4 = run_subcommand("bands", cfg);
  set_thread_limit(0);
  CHECK(s1.payload == s4.payload);  // byte identical across worker counts
  CHECK(s1.payload == r1.payload);
}

TEST_CASE("bands: json payload parses and is self-consistent") {
  RunConfig cfg = bands_config();
  cfg.format = "json";
  const auto r = run_subcommand("bands", cfg);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.payload);
  CHECK(j.at("command") == "bands");
  CHECK(j.at("p") == 1);
  CHECK(j.at("q") == 2);
  const auto& bands = j.at("bands");
  REQUIRE(bands.is_array());
  CHECK(j.at("band_count").get<std::size_t>() == bands.size());
  double total = 0;
  for (const auto& b : bands) {
    REQUIRE(b.size() == 2);
    CHECK(b[0].get<double>() <= b[1].get<double>());
    total += b[1].get<double>() - b[0].get<double>();
  }
  CHECK(j.at("total_bandwidth").get<double>() == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("configuration errors carry exit-code-2 semantics") {
  // report commands have no csv form
  RunConfig cfg = default_config();
  cfg.format = "csv";
  CHECK_THROWS_AS((void)run_subcommand("theorem3", cfg), ConfigError);
  // bands needs a rational frequency
  CHECK_THROWS_AS((void)run_subcommand("bands", default_config()), ConfigError);
  // conjecture needs an irrational one
  CHECK_THROWS_AS((void)run_subcommand("conjecture", bands_config()), ConfigError);
  // unknown subcommand
  CHECK_THROWS_AS((void)run_subcommand("frobnicate", default_config()), ConfigError);
  // format tokens are csv / json only
  RunConfig bad = bands_config();
  bad.format = "yaml";
  CHECK_THROWS_AS((void)run_subcommand("bands", bad), ConfigError);
}

TEST_CASE("config file: full roundtrip of every key") {
  TmpDir tmp;
  const std::string path = tmp.write("full.json", R"({
    "potential": {"coeffs": [[1, 0.5, 0.0], [2, 0.25, -0.1]], "eta": 0.8, "degree": 2},
    "alpha": [3, 8],
    "convergent_count": 6,
    "theta": 0.125,
    "E_min": -3.0,
    "E_max": 3.0,
    "E_count": 21,
    "E_probe": 2.5,
    "theta_count": 64,
    "eps": 0.3,
    "eps_list": [0.1],
    "gamma_tol": 0.02,
    "q_max": 55,
    "n_list": [13, 21],
    "k_grid_size": 512,
    "farey_order": 5,
    "lyapunov_method": "mn",
    "out": "result.csv",
    "format": "csv",
    "threads": 2
  })");
  const RunConfig cfg = load_config_file(path);
  REQUIRE(cfg.coeffs.size() == 2);
  CHECK(cfg.coeffs.at(1) == std::complex<double>(0.5, 0.0));
  CHECK(cfg.coeffs.at(2) == std::complex<double>(0.25, -0.1));
  CHECK(cfg.eta == 0.8);
  REQUIRE(cfg.degree.has_value());
  CHECK(*cfg.degree == 2);
  REQUIRE(cfg.rational.has_value());
  CHECK(*cfg.rational == Rational(3, 8));
  CHECK(cfg.convergent_count == 6);
  CHECK(cfg.theta == 0.125);
  CHECK(cfg.E_min == -3.0);
  CHECK(cfg.E_max == 3.0);
  CHECK(cfg.E_count == 21);
  CHECK(cfg.E_probe == 2.5);
  CHECK(cfg.theta_count == 64);
  CHECK(cfg.eps == 0.3);
  CHECK(cfg.eps_list == std::vector<double>{0.1});
  CHECK(cfg.gamma_tol == 0.02);
  CHECK(cfg.q_max == 55);
  CHECK((cfg.n_list == std::vector<int>{13, 21}));
  CHECK(cfg.k_grid_size == 512);
  CHECK(cfg.farey_order == 5);
  CHECK(cfg.lyapunov_method == "mn");
  CHECK(cfg.out == "result.csv");
  CHECK(cfg.format == "csv");
  CHECK(cfg.threads == 2);
}

TEST_CASE("config file: alpha forms and the degree marker") {
  TmpDir tmp;
  const RunConfig tok = load_config_file(tmp.write("tok.json", R"({"alpha": "sqrt2m1"})"));
  CHECK_FALSE(tok.rational.has_value());
  CHECK(tok.alpha_token == "sqrt2m1");

  const RunConfig dec =
      load_config_file(tmp.write("dec.json", R"({"alpha": "0.41421356237309504"})"));
  CHECK(dec.alpha_token == "0.41421356237309504");

  // a potential block without "degree" clears the trig-poly declaration
  const RunConfig nodeg = load_config_file(
      tmp.write("nodeg.json", R"({"potential": {"coeffs": [[1, 1.0, 0.0]], "eta": 0.5}})"));
  CHECK_FALSE(nodeg.degree.has_value());
  CHECK(nodeg.eta == 0.5);

  // defaults survive an empty config
  const RunConfig empty = load_config_file(tmp.write("empty.json", "{}"));
  CHECK(empty.alpha_token == "golden");
  REQUIRE(empty.degree.has_value());
  CHECK(*empty.degree == 1);
  CHECK(empty.coeffs.size() == 1);
}

TEST_CASE("config file: malformed inputs are rejected") {
  TmpDir tmp;
  CHECK_THROWS_AS((void)load_config_file((tmp.dir / "missing.json").string()), ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("bad.json", "{,}")), ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("arr.json", "[1, 2]")), ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("k.json", R"({"volume": 11})")), ConfigError);
  CHECK_THROWS_AS(
      (void)load_config_file(tmp.write("pk.json", R"({"potential": {"amplitude": 2}})")),
      ConfigError);
  CHECK_THROWS_AS(
      (void)load_config_file(tmp.write("c2.json", R"({"potential": {"coeffs": [[1, 0.5]]}})")),
      ConfigError);
  CHECK_THROWS_AS(
      (void)load_config_file(
          tmp.write("dup.json", R"({"potential": {"coeffs": [[1, 1, 0], [1, 2, 0]]}})")),
      ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("a3.json", R"({"alpha": [1, 2, 3]})")),
                  ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("an.json", R"({"alpha": 0.5})")),
                  ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("tc.json", R"({"theta_count": 8})")),
                  ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("cc.json", R"({"convergent_count": 0})")),
                  ConfigError);
  CHECK_THROWS_AS((void)load_config_file(tmp.write("ty.json", R"({"E_count": "many"})")),
                  ConfigError);
}

TEST_CASE("run_and_write delivers the payload to the output file") {
  TmpDir tmp;
  RunConfig cfg = bands_config();
  cfg.format = "json";
  cfg.out = (tmp.dir / "bands.json").string();
  const int code = run_and_write("bands", cfg);
  CHECK(code == 0);
  const auto expect = run_subcommand("bands", cfg);
  CHECK(tmp.read("bands.json") == expect.payload);
}

TEST_CASE("seed environment variable is reserved and has no effect") {
  const RunConfig cfg = bands_config();
  const auto before = run_subcommand("bands", cfg);
  ::setenv("QUASISPEC_SEED", "20260814", 1);
  const auto with_env = run_subcommand("bands", cfg);
  ::unsetenv("QUASISPEC_SEED");
  CHECK(before.payload == with_env.payload);
}

TEST_CASE("verify-all: the full identity suite passes") {
  const auto r = run_subcommand("verify-all", default_config());
  const auto j = nlohmann::json::parse(r.payload);
  CHECK(j.at("command") == "verify-all");
  CHECK(j.at("total").get<int>() >= 30);
  for (const auto& c : j.at("checks")) {
    CAPTURE(c.at("name").get<std::string>());
    CAPTURE(c.at("detail").get<std::string>());
    CHECK(c.at("pass").get<bool>());
  }
  CHECK(j.at("failed").get<int>() == 0);
  CHECK(j.at("all_pass").get<bool>());
  CHECK(r.exit_code == 0);
}
