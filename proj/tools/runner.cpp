#include "runner.hpp"

#include "verify_checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "quasispec/bandset.hpp"
#include "quasispec/discriminant.hpp"
#include "quasispec/fft.hpp"
#include "quasispec/lyapunov.hpp"
#include "quasispec/parallel.hpp"
#include "quasispec/spectrum.hpp"
#include "quasispec/transfer.hpp"

namespace quasispec::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson jreal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = 0.5 * (a + b);
    return v;
  }
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) /
                                         static_cast<double>(count - 1);
  return v;
}

AnalyticPotential potential_from(const RunConfig& cfg) {
  try {
    return AnalyticPotential(cfg.coeffs, cfg.eta, cfg.degree);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

struct FreqCtx {
  std::optional<Rational> rational;
  std::optional<IrrationalTarget> irrational;

  const std::vector<Rational>& ladder() const {
    static const std::vector<Rational> empty;
    return irrational ? irrational->convergents() : empty;
  }
};

FreqCtx freq_from(const RunConfig& cfg) {
  FreqCtx fc;
  if (cfg.rational) {
    fc.rational = cfg.rational;
    return fc;
  }
  try {
    fc.irrational = IrrationalTarget::from_token(cfg.alpha_token, cfg.convergent_count);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("alpha: ") + e.what());
  }
  return fc;
}

std::vector<double> energy_grid(const RunConfig& cfg, const AnalyticPotential& f) {
  const double r = enclosing_energy_bound(f);
  const double lo = cfg.E_min.value_or(-r);
  const double hi = cfg.E_max.value_or(r);
  if (!(lo < hi) || cfg.E_count < 2) throw ConfigError("energy grid: need E_min < E_max, E_count >= 2");
  return linspace(lo, hi, cfg.E_count);
}

ojson config_echo(const RunConfig& cfg) {
  ojson j;
  ojson coeffs = ojson::array();
  for (const auto& [k, a] : cfg.coeffs) coeffs.push_back({k, a.real(), a.imag()});
  j["potential"] = {{"coeffs", coeffs}, {"eta", cfg.eta}};
  if (cfg.degree) j["potential"]["degree"] = *cfg.degree;
  if (cfg.rational)
    j["alpha"] = {cfg.rational->p, cfg.rational->q};
  else
    j["alpha"] = cfg.alpha_token;
  j["convergent_count"] = cfg.convergent_count;
  j["theta"] = cfg.theta;
  if (cfg.E_min) j["E_min"] = *cfg.E_min;
  if (cfg.E_max) j["E_max"] = *cfg.E_max;
  j["E_count"] = cfg.E_count;
  j["E_probe"] = cfg.E_probe;
  j["theta_count"] = cfg.theta_count;
  j["eps"] = cfg.eps;
  j["eps_list"] = cfg.eps_list;
  j["gamma_tol"] = cfg.gamma_tol;
  j["q_max"] = cfg.q_max;
  j["n_list"] = cfg.n_list;
  j["k_grid_size"] = cfg.k_grid_size;
  j["farey_order"] = cfg.farey_order;
  j["lyapunov_method"] = cfg.lyapunov_method;
  return j;
}

std::string csv_head(const std::string& cmd, const RunConfig& cfg,
                     const std::string& columns) {
  std::string s = "# quasispec " + cmd + "\n# config " + config_echo(cfg).dump() + "\n";
  return s + columns + "\n";
}

enum class Kind { grid, report };

std::string pick_format(const RunConfig& cfg, Kind kind, const std::string& cmd) {
  if (cfg.format.empty()) return kind == Kind::grid ? "csv" : "json";
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format: must be csv or json");
  if (cfg.format == "csv" && kind == Kind::report)
    throw ConfigError(cmd + ": csv output is not defined for report commands");
  return cfg.format;
}

ojson bands_json(const BandSet& b) {
  ojson arr = ojson::array();
  for (const auto& iv : b.intervals()) arr.push_back({iv.lo, iv.hi});
  return arr;
}

// ---------------------------------------------------------------- commands

RunResult cmd_bands(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  if (!fc.rational)
    throw ConfigError("bands: needs a rational frequency (alpha = [p, q]); "
                      "use butterfly for ladders");
  const Rational pq = *fc.rational;
  const BandSet b = sigma(f, pq, cfg.theta);
  const std::string format = pick_format(cfg, Kind::grid, "bands");

  RunResult r;
  r.human = "bands: " + pq.str() + " -> " + std::to_string(b.size()) + " band(s)";
  if (format == "csv") {
    std::string s = csv_head("bands", cfg, "band_index,E_min,E_max");
    for (std::size_t i = 0; i < b.size(); ++i)
      s += std::to_string(i) + "," + fmt17(b.intervals()[i].lo) + "," +
           fmt17(b.intervals()[i].hi) + "\n";
    r.payload = s;
  } else {
    ojson j{{"command", "bands"}, {"config", config_echo(cfg)}};
    j["p"] = pq.p;
    j["q"] = pq.q;
    j["theta"] = cfg.theta;
    j["band_count"] = b.size();
    j["bands"] = bands_json(b);
    j["total_bandwidth"] = jreal(b.measure());
    r.payload = j.dump(2) + "\n";
  }
  return r;
}

RunResult cmd_sminus(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  if (!fc.rational) throw ConfigError("sminus: needs a rational frequency");
  const Rational pq = *fc.rational;
  const auto plain = s_minus(f, pq, cfg.theta_count);
  const auto fat = s_minus_eps(f, pq, cfg.eps, cfg.theta_count);
  const std::string format = pick_format(cfg, Kind::grid, "sminus");

  RunResult r;
  r.human = "sminus: " + pq.str() + " -> measure " + fmt17(plain.bands.measure());
  if (format == "csv") {
    std::string s = csv_head("sminus", cfg, "eps,band_index,E_min,E_max");
    for (std::size_t i = 0; i < plain.bands.size(); ++i)
      s += "0," + std::to_string(i) + "," + fmt17(plain.bands.intervals()[i].lo) + "," +
           fmt17(plain.bands.intervals()[i].hi) + "\n";
    for (std::size_t i = 0; i < fat.bands.size(); ++i)
      s += fmt17(cfg.eps) + "," + std::to_string(i) + "," +
           fmt17(fat.bands.intervals()[i].lo) + "," + fmt17(fat.bands.intervals()[i].hi) +
           "\n";
    r.payload = s;
  } else {
    ojson j{{"command", "sminus"}, {"config", config_echo(cfg)}};
    j["p"] = pq.p;
    j["q"] = pq.q;
    j["theta_samples"] = plain.theta_samples;
    j["theta_step"] = jreal(plain.theta_step);
    j["sminus"] = bands_json(plain.bands);
    j["sminus_measure"] = jreal(plain.bands.measure());
    j["eps"] = cfg.eps;
    j["sminus_eps"] = bands_json(fat.bands);
    j["sminus_eps_measure"] = jreal(fat.bands.measure());
    r.payload = j.dump(2) + "\n";
  }
  return r;
}

RunResult cmd_upsilon(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  const auto grid = energy_grid(cfg, f);
  std::vector<Rational> freqs;
  if (fc.rational)
    freqs.push_back(*fc.rational);
  else
    freqs = fc.ladder();
  const std::string format = pick_format(cfg, Kind::grid, "upsilon");

  struct Row {
    Rational pq;
    double E, measure;
    bool degenerate;
  };
  std::vector<Row> rows(freqs.size() * grid.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto& pq = freqs[i / grid.size()];
    const double E = grid[i % grid.size()];
    const auto u = upsilon_measure(E, f, pq);
    rows[i] = {pq, E, u.measure, u.boundary_degenerate};
  });

  RunResult r;
  r.human = "upsilon: " + std::to_string(rows.size()) + " rows";
  if (format == "csv") {
    std::string s = csv_head("upsilon", cfg, "p,q,E,measure,degenerate");
    for (const auto& row : rows)
      s += std::to_string(row.pq.p) + "," + std::to_string(row.pq.q) + "," +
           fmt17(row.E) + "," + fmt17(row.measure) + "," +
           (row.degenerate ? "1" : "0") + "\n";
    r.payload = s;
  } else {
    ojson arr = ojson::array();
    for (const auto& row : rows)
      arr.push_back({{"p", row.pq.p},
                     {"q", row.pq.q},
                     {"E", row.E},
                     {"measure", jreal(row.measure)},
                     {"degenerate", row.degenerate}});
    ojson j{{"command", "upsilon"}, {"config", config_echo(cfg)}, {"rows", arr}};
    r.payload = j.dump(2) + "\n";
  }
  return r;
}

RunResult cmd_theorem3(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  if (fc.rational)
    throw ConfigError("theorem3: needs an irrational frequency (convergent ladder)");
  const auto grid = energy_grid(cfg, f);
  const auto rep = theorem3_probe(f, fc.ladder(), grid, cfg.eps, cfg.theta_count);
  pick_format(cfg, Kind::report, "theorem3");

  ojson qs = ojson::array();
  for (const auto& pq : rep.qs) qs.push_back({pq.p, pq.q});
  ojson rows = ojson::array();
  int failures = 0;
  for (const auto& row : rep.rows) {
    ojson m = ojson::array();
    for (const double v : row.measures) m.push_back(jreal(v));
    rows.push_back({{"E", row.E},
                    {"gamma_bar", jreal(row.gamma_bar)},
                    {"measures", m},
                    {"fitted_slope", jreal(row.fitted_slope)},
                    {"bound_slope", jreal(row.bound_slope)},
                    {"in_scope", row.in_scope},
                    {"positive_points", row.positive_points},
                    {"decay_ok", row.decay_ok}});
    if (row.in_scope && !row.decay_ok) ++failures;
  }
  ojson fub = ojson::array();
  for (const double v : rep.fubini_integral) fub.push_back(jreal(v));

  ojson j{{"command", "theorem3"}, {"config", config_echo(cfg)}};
  j["d"] = rep.d;
  j["eps"] = rep.eps;
  j["convergents"] = qs;
  j["rows"] = rows;
  j["fubini_integral"] = fub;
  j["rows_in_scope_failing"] = failures;

  RunResult r;
  r.payload = j.dump(2) + "\n";
  r.human = "theorem3: " + std::to_string(rep.rows.size()) + " rows, " +
            std::to_string(failures) + " in-scope failures";
  return r;
}

RunResult cmd_lyapunov(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  const auto grid = energy_grid(cfg, f);
  LyapunovCurve curve;
  if (cfg.lyapunov_method == "rational") {
    const Rational pq = fc.rational ? *fc.rational : fc.ladder().back();
    curve = lyapunov_curve_rational(f, pq, grid, cfg.theta_count);
  } else if (cfg.lyapunov_method == "mn") {
    const Frequency alpha =
        fc.rational ? Frequency(*fc.rational) : Frequency(fc.irrational->value());
    curve = lyapunov_curve_mn(f, alpha, grid, cfg.n_list);
  } else {
    throw ConfigError("lyapunov_method: must be rational or mn");
  }
  const std::string format = pick_format(cfg, Kind::grid, "lyapunov");

  RunResult r;
  r.human = "lyapunov(" + curve.method + "): alpha " + curve.alpha_desc;
  if (format == "csv") {
    std::string s = csv_head("lyapunov", cfg, "E,gamma");
    for (std::size_t i = 0; i < curve.E.size(); ++i)
      s += fmt17(curve.E[i]) + "," + fmt17(curve.gamma[i]) + "\n";
    r.payload = s;
  } else {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < curve.E.size(); ++i)
      rows.push_back({{"E", curve.E[i]}, {"gamma", jreal(curve.gamma[i])}});
    ojson j{{"command", "lyapunov"},
            {"config", config_echo(cfg)},
            {"alpha", curve.alpha_desc},
            {"method", curve.method},
            {"rows", rows}};
    r.payload = j.dump(2) + "\n";
  }
  return r;
}

RunResult cmd_herman(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  const auto grid = energy_grid(cfg, f);
  std::vector<Rational> freqs;
  if (fc.rational)
    freqs.push_back(*fc.rational);
  else
    freqs = fc.ladder();
  const auto rep = herman_check(f, freqs, grid, cfg.theta_count);
  pick_format(cfg, Kind::report, "herman");

  ojson rows = ojson::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"p", row.pq.p},
                    {"q", row.pq.q},
                    {"min_margin", jreal(row.min_margin)},
                    {"worst_E", row.worst_E},
                    {"bound_ok", row.bound_ok},
                    {"emptiness_applicable", row.emptiness_applicable},
                    {"s_minus_empty", row.s_minus_empty},
                    {"emptiness_ok", row.emptiness_ok}});
  ojson j{{"command", "herman"}, {"config", config_echo(cfg)}};
  j["d"] = rep.d;
  j["lnplus_ad"] = jreal(rep.lnplus_ad);
  j["tolerance"] = rep.tolerance;
  j["q_threshold"] = jreal(rep.q_threshold);
  j["rows"] = rows;
  j["bound_ok"] = rep.bound_ok;
  j["emptiness_ok"] = rep.emptiness_ok;

  RunResult r;
  r.payload = j.dump(2) + "\n";
  r.human = std::string("herman: bound ") + (rep.bound_ok ? "ok" : "VIOLATED") +
            ", emptiness " + (rep.emptiness_ok ? "ok" : "VIOLATED");
  return r;
}

RunResult cmd_aset(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  const auto grid = energy_grid(cfg, f);
  std::vector<Rational> ladder;
  if (fc.rational)
    ladder.push_back(*fc.rational);
  else
    ladder = fc.ladder();
  const auto est =
      a_set_estimate(f, ladder, grid, cfg.gamma_tol, cfg.q_max, cfg.theta_count);
  pick_format(cfg, Kind::report, "aset");

  ojson j{{"command", "aset"}, {"config", config_echo(cfg)}};
  j["q_used"] = {est.q_used.p, est.q_used.q};
  j["gamma_tol"] = est.gamma_tol;
  j["cells"] = bands_json(est.cells);
  j["cell_measure"] = jreal(est.cells.measure());
  ojson gv = ojson::array();
  for (const double g : est.gamma_values) gv.push_back(jreal(g));
  j["gamma_values"] = gv;

  RunResult r;
  r.payload = j.dump(2) + "\n";
  r.human = "aset: measure " + fmt17(est.cells.measure()) + " at q " + est.q_used.str();
  return r;
}

RunResult cmd_conjecture(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  if (fc.rational) throw ConfigError("conjecture: needs an irrational frequency");
  const auto grid = energy_grid(cfg, f);
  const auto rep = conjecture_probe(f, fc.ladder(), grid, cfg.eps_list, cfg.gamma_tol,
                                    cfg.theta_count);
  pick_format(cfg, Kind::report, "conjecture");

  ojson rows = ojson::array();
  for (const auto& row : rep.rows) {
    ojson eps_rows = ojson::array();
    for (const auto& [e, v] : row.eps_rows)
      eps_rows.push_back({{"eps", e}, {"excess_measure", jreal(v)}});
    rows.push_back({{"p", row.pq.p},
                    {"q", row.pq.q},
                    {"hausdorff_to_aset", jreal(row.hausdorff_sminus_aset)},
                    {"symdiff_to_aset", jreal(row.symdiff_sminus_aset)},
                    {"eps_rows", eps_rows}});
  }
  ojson j{{"command", "conjecture"}, {"config", config_echo(cfg)}};
  j["gamma_tol"] = cfg.gamma_tol;
  j["aset_measure"] = jreal(rep.a_set.cells.measure());
  j["aset_q_used"] = {rep.a_set.q_used.p, rep.a_set.q_used.q};
  j["rows"] = rows;
  j["cells_checked"] = rep.cells_checked;
  j["cells_in_all_sminus"] = rep.cells_in_all_sminus;
  j["inclusion_direction_ok"] = rep.inclusion_direction_ok;

  RunResult r;
  r.payload = j.dump(2) + "\n";
  r.human = std::string("conjecture: inclusion ") +
            (rep.inclusion_direction_ok ? "ok" : "VIOLATED");
  return r;
}

RunResult cmd_fourier_check(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  const auto fc = freq_from(cfg);
  const Rational pq = fc.rational ? *fc.rational : fc.ladder().back();
  pick_format(cfg, Kind::report, "fourier-check");
  const double E = cfg.E_probe;

  const auto s = sample_discriminant(E, f, pq, static_cast<int>(pq.q));
  const double off = check_period_collapse(s);
  ojson j{{"command", "fourier-check"}, {"config", config_echo(cfg)}};
  j["q"] = pq.q;
  j["p"] = pq.p;
  j["E"] = E;
  j["max_offlattice"] = jreal(off);
  j["offlattice_threshold"] = jreal(1e-9 * std::max(1.0, s.max_abs_value()));

  double lead_err = std::numeric_limits<double>::quiet_NaN();
  std::string lead_variant = "n/a";
  double chambers = std::numeric_limits<double>::quiet_NaN();
  if (f.declared_degree() && std::abs(f.coeff(*f.declared_degree())) > 0) {
    const auto cmp = compare_leading_coeff(f, pq, E);
    lead_err = cmp.err_with_sign;
    lead_variant = cmp.with_sign_matches
                       ? "with-sign"
                       : (cmp.without_sign_matches ? "without-sign" : "neither");
    if (*f.declared_degree() == 1) chambers = chambers_residual(f, pq, E);
  }
  j["leadcoef_error"] = jreal(lead_err);
  j["leadcoef_variant"] = lead_variant;
  j["chambers_residual"] = jreal(chambers);
  const bool ok = off <= 1e-9 * std::max(1.0, s.max_abs_value()) &&
                  (!std::isfinite(lead_err) || lead_err <= 1e-9);
  j["ok"] = ok;

  RunResult r;
  r.payload = j.dump(2) + "\n";
  r.human = std::string("fourier-check: ") + (ok ? "ok" : "FAILED") + " at " + pq.str();
  return r;
}

RunResult cmd_butterfly(const RunConfig& cfg) {
  const auto f = potential_from(cfg);
  if (cfg.farey_order < 1 || cfg.farey_order > 64)
    throw ConfigError("farey_order: must be in [1, 64]");
  std::vector<Rational> freqs;
  for (std::int64_t q = 1; q <= cfg.farey_order; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      const Rational r(p, q);
      if (r.q == q) freqs.push_back(r);  // reduced == coprime
    }
  const std::string format = pick_format(cfg, Kind::grid, "butterfly");

  std::vector<BandSet> slots(freqs.size());
  parallel_for(freqs.size(), [&](std::size_t i) {
    slots[i] = sigma(f, freqs[i], cfg.theta);
  });

  RunResult r;
  r.human = "butterfly: " + std::to_string(freqs.size()) + " frequencies";
  if (format == "csv") {
    std::string s = csv_head("butterfly", cfg, "p,q,alpha,band_index,E_min,E_max");
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      const auto& pq = freqs[i];
      const auto& b = slots[i];
      for (std::size_t k = 0; k < b.size(); ++k)
        s += std::to_string(pq.p) + "," + std::to_string(pq.q) + "," +
             fmt17(pq.value()) + "," + std::to_string(k) + "," +
             fmt17(b.intervals()[k].lo) + "," + fmt17(b.intervals()[k].hi) + "\n";
    }
    r.payload = s;
  } else {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < freqs.size(); ++i)
      rows.push_back({{"p", freqs[i].p},
                      {"q", freqs[i].q},
                      {"bands", bands_json(slots[i])}});
    ojson j{{"command", "butterfly"}, {"config", config_echo(cfg)}, {"rows", rows}};
    r.payload = j.dump(2) + "\n";
  }
  return r;
}

// ------------------------------------------------------------- verify-all

RunResult cmd_verify_all(const RunConfig& cfg) {
  pick_format(cfg, Kind::report, "verify-all");
  std::vector<Check> checks;
  run_checks(cfg, checks);

  int failed = 0;
  ojson rows = ojson::array();
  std::string table;
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    rows.push_back({{"name", c.name},
                    {"pass", c.pass},
                    {"value", jreal(c.value)},
                    {"threshold", jreal(c.threshold)},
                    {"detail", c.detail}});
    table += std::string(c.pass ? "  ok   " : " FAIL  ") + c.name +
             "  (value " + fmt17(c.value) + ", threshold " + fmt17(c.threshold) + ")\n";
  }
  ojson j{{"command", "verify-all"}, {"config", config_echo(cfg)}};
  j["checks"] = rows;
  j["total"] = checks.size();
  j["failed"] = failed;
  j["all_pass"] = failed == 0;

  RunResult r;
  r.exit_code = failed == 0 ? 0 : 1;
  r.payload = j.dump(2) + "\n";
  r.human = table + "verify-all: " + std::to_string(checks.size() - failed) + "/" +
            std::to_string(checks.size()) + " checks passed";
  return r;
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

namespace {

void parse_potential(const nlohmann::json& jp, RunConfig& cfg) {
  if (!jp.is_object()) throw ConfigError("potential: must be an object");
  for (const auto& [key, val] : jp.items()) {
    if (key == "coeffs") {
      if (!val.is_array()) throw ConfigError("potential.coeffs: must be an array");
      cfg.coeffs.clear();
      for (const auto& e : val) {
        if (!e.is_array() || e.size() != 3)
          throw ConfigError("potential.coeffs: entries must be [k, re, im]");
        const int k = e[0].get<int>();
        if (cfg.coeffs.count(k)) throw ConfigError("potential.coeffs: duplicate k");
        cfg.coeffs[k] = {e[1].get<double>(), e[2].get<double>()};
      }
    } else if (key == "eta") {
      cfg.eta = val.get<double>();
    } else if (key == "degree") {
      cfg.degree = val.get<int>();
    } else {
      throw ConfigError("potential: unknown key '" + key + "'");
    }
  }
  if (!jp.contains("degree")) cfg.degree.reset();
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  RunConfig cfg;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "potential") {
        parse_potential(val, cfg);
      } else if (key == "alpha") {
        if (val.is_array()) {
          if (val.size() != 2) throw ConfigError("alpha: rational form is [p, q]");
          cfg.rational = Rational(val[0].get<std::int64_t>(), val[1].get<std::int64_t>());
        } else if (val.is_string()) {
          cfg.alpha_token = val.get<std::string>();
          cfg.rational.reset();
        } else {
          throw ConfigError("alpha: must be [p, q] or a token/decimal string");
        }
      } else if (key == "convergent_count") {
        cfg.convergent_count = val.get<int>();
      } else if (key == "theta") {
        cfg.theta = val.get<double>();
      } else if (key == "E_min") {
        cfg.E_min = val.get<double>();
      } else if (key == "E_max") {
        cfg.E_max = val.get<double>();
      } else if (key == "E_count") {
        cfg.E_count = val.get<int>();
      } else if (key == "E_probe") {
        cfg.E_probe = val.get<double>();
      } else if (key == "theta_count") {
        cfg.theta_count = val.get<int>();
      } else if (key == "eps") {
        cfg.eps = val.get<double>();
      } else if (key == "eps_list") {
        cfg.eps_list = val.get<std::vector<double>>();
      } else if (key == "gamma_tol") {
        cfg.gamma_tol = val.get<double>();
      } else if (key == "q_max") {
        cfg.q_max = val.get<std::int64_t>();
      } else if (key == "n_list") {
        cfg.n_list = val.get<std::vector<int>>();
      } else if (key == "k_grid_size") {
        cfg.k_grid_size = val.get<std::size_t>();
      } else if (key == "farey_order") {
        cfg.farey_order = val.get<int>();
      } else if (key == "lyapunov_method") {
        cfg.lyapunov_method = val.get<std::string>();
      } else if (key == "out") {
        cfg.out = val.get<std::string>();
      } else if (key == "format") {
        cfg.format = val.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = val.get<unsigned>();
      } else {
        throw ConfigError("config: unknown key '" + key + "'");
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.convergent_count < 1) throw ConfigError("convergent_count: must be >= 1");
  if (cfg.theta_count < 16) throw ConfigError("theta_count: must be >= 16");
  return cfg;
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "bands",   "sminus",    "upsilon",       "theorem3",  "lyapunov", "herman",
      "aset",    "conjecture", "fourier-check", "butterfly", "verify-all"};
  return names;
}

RunResult run_subcommand(const std::string& name, const RunConfig& cfg) {
  if (name == "bands") return cmd_bands(cfg);
  if (name == "sminus") return cmd_sminus(cfg);
  if (name == "upsilon") return cmd_upsilon(cfg);
  if (name == "theorem3") return cmd_theorem3(cfg);
  if (name == "lyapunov") return cmd_lyapunov(cfg);
  if (name == "herman") return cmd_herman(cfg);
  if (name == "aset") return cmd_aset(cfg);
  if (name == "conjecture") return cmd_conjecture(cfg);
  if (name == "fourier-check") return cmd_fourier_check(cfg);
  if (name == "butterfly") return cmd_butterfly(cfg);
  if (name == "verify-all") return cmd_verify_all(cfg);
  throw ConfigError("unknown subcommand: " + name);
}

int run_and_write(const std::string& name, const RunConfig& cfg) {
  set_thread_limit(cfg.threads);
  RunResult res;
  try {
    res = run_subcommand(name, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // precondition violations in the core are induced by config values
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  if (cfg.out == "-") {
    std::cout << res.payload;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    out << res.payload;
  }
  if (!res.human.empty()) std::cerr << res.human << "\n";
  return res.exit_code;
}

}  // namespace quasispec::cli
