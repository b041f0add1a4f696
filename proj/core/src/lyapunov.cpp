#include "quasispec/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quasispec/parallel.hpp"

namespace quasispec {

double log_spectral_radius_from_trace(const LogTrace& t) {
  constexpr double ln2 = 0.69314718055994530941723212145817657;
  if (t.sign == 0 || t.log_abs <= ln2) return 0.0;  // |trace| <= 2: rho = 1
  // rho = |t|/2 + sqrt(t^2/4 - 1) = |t| (1/2 + sqrt(1/4 - 1/t^2))
  const double u = std::exp(-2.0 * t.log_abs);  // 1/t^2 < 1/4
  return t.log_abs + std::log(0.5 + std::sqrt(0.25 - u));
}

double gamma_rational(double E, const AnalyticPotential& f, const Rational& pq,
                      double theta) {
  const auto q = pq.q;
  const LogTrace t = discriminant_trace_log(E, f, pq, theta, static_cast<int>(q));
  return log_spectral_radius_from_trace(t) / static_cast<double>(q);
}

namespace {

double bar_gamma_mean(double E, const AnalyticPotential& f, const Rational& pq, int m) {
  // Midpoint rule over one fundamental period [0, 2pi/q); gamma is 2pi/q
  // periodic in theta, so this is the full circle average.
  const auto q = pq.q;
  const double period = two_pi / static_cast<double>(q);
  double acc = 0;
  for (int j = 0; j < m; ++j) {
    const double theta = period * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    acc += gamma_rational(E, f, pq, theta);
  }
  return acc / static_cast<double>(m);
}

}  // namespace

BarGammaDetail bar_gamma_rational_detail(double E, const AnalyticPotential& f,
                                         const Rational& pq, int theta_count) {
  if (theta_count < 256)
    throw std::invalid_argument("bar_gamma_rational: theta_count must be >= 256");
  BarGammaDetail d;
  d.theta_count = theta_count;
  d.value = bar_gamma_mean(E, f, pq, theta_count);
  d.coarse = bar_gamma_mean(E, f, pq, theta_count / 2);
  d.richardson = (4.0 * d.value - d.coarse) / 3.0;
  d.error_estimate = std::abs(d.value - d.coarse) / 3.0;
  return d;
}

double bar_gamma_rational(double E, const AnalyticPotential& f, const Rational& pq,
                          int theta_count) {
  if (theta_count < 256)
    throw std::invalid_argument("bar_gamma_rational: theta_count must be >= 256");
  return bar_gamma_mean(E, f, pq, theta_count);
}

MnEstimate bar_gamma_mn(double E, const AnalyticPotential& f, const Frequency& alpha,
                        std::span<const int> n_list) {
  if (n_list.empty()) throw std::invalid_argument("bar_gamma_mn: empty n list");
  MnEstimate est;
  est.value = -std::numeric_limits<double>::infinity();
  for (const int n : n_list) {
    if (n < 1) throw std::invalid_argument("bar_gamma_mn: n must be >= 1");
    const double v = m_n(E, f, alpha, n) / static_cast<double>(n);
    est.sequence.emplace_back(n, v);
    est.value = std::max(est.value, v);
  }
  return est;
}

ASetEstimate a_set_estimate(const AnalyticPotential& f, std::span<const Rational> cv,
                            std::span<const double> E_grid, double gamma_tol,
                            std::int64_t q_max, int theta_count) {
  if (cv.empty()) throw std::invalid_argument("a_set_estimate: no convergents");
  if (E_grid.size() < 2) throw std::invalid_argument("a_set_estimate: energy grid too small");
  bool found = false;
  Rational deep;
  for (const auto& pq : cv)
    if (pq.q <= q_max && (!found || pq.q >= deep.q)) {
      deep = pq;
      found = true;
    }
  if (!found)
    throw std::invalid_argument("a_set_estimate: no convergent with q <= q_max");

  ASetEstimate est;
  est.gamma_tol = gamma_tol;
  est.q_used = deep;
  est.q_max = q_max;
  est.theta_count = theta_count;
  est.gamma_values.resize(E_grid.size());
  parallel_for(E_grid.size(), [&](std::size_t i) {
    est.gamma_values[i] = bar_gamma_rational(E_grid[i], f, deep, theta_count);
  });

  const double step = E_grid[1] - E_grid[0];
  std::vector<Interval> cells;
  for (std::size_t i = 0; i < E_grid.size(); ++i)
    if (est.gamma_values[i] < gamma_tol)
      cells.push_back({E_grid[i] - 0.5 * step, E_grid[i] + 0.5 * step});
  est.cells = BandSet(std::move(cells));
  return est;
}

HermanReport herman_check(const AnalyticPotential& f, std::span<const Rational> freqs,
                          std::span<const double> E_grid, int theta_count,
                          int s_minus_theta_count) {
  if (!f.declared_degree())
    throw std::invalid_argument("herman_check: f must be a trig polynomial");
  if (freqs.empty() || E_grid.empty())
    throw std::invalid_argument("herman_check: empty frequency or energy list");

  HermanReport rep;
  rep.d = *f.declared_degree();
  const double ad = std::abs(f.coeff(rep.d));
  if (ad == 0) throw std::invalid_argument("herman_check: top coefficient vanishes");
  rep.lnplus_ad = std::max(0.0, std::log(ad));
  rep.tolerance = 0.02;
  rep.q_threshold = ad > 1 ? 1.0 / (2.0 * std::log2(ad))
                           : std::numeric_limits<double>::infinity();

  for (const auto& pq : freqs) {
    HermanFreqRow row;
    row.pq = pq;
    std::vector<double> gammas(E_grid.size());
    parallel_for(E_grid.size(), [&](std::size_t i) {
      gammas[i] = bar_gamma_rational(E_grid[i], f, pq, theta_count);
    });
    row.min_margin = std::numeric_limits<double>::infinity();
    row.worst_E = E_grid[0];
    for (std::size_t i = 0; i < E_grid.size(); ++i) {
      const double margin = gammas[i] - rep.lnplus_ad + rep.tolerance;
      if (margin < row.min_margin) {
        row.min_margin = margin;
        row.worst_E = E_grid[i];
      }
    }
    row.bound_ok = row.min_margin >= 0;

    row.emptiness_applicable =
        ad > 1 && static_cast<double>(pq.q) > rep.q_threshold;
    if (row.emptiness_applicable) {
      const int m = s_minus_theta_count > 0 ? s_minus_theta_count
                                            : static_cast<int>(16 * pq.q);
      row.s_minus_empty = s_minus(f, pq, m).bands.empty();
      row.emptiness_ok = row.s_minus_empty;
    }
    rep.rows.push_back(std::move(row));
  }

  rep.bound_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                             [](const HermanFreqRow& r) { return r.bound_ok; });
  rep.emptiness_ok = std::all_of(rep.rows.begin(), rep.rows.end(),
                                 [](const HermanFreqRow& r) { return r.emptiness_ok; });
  return rep;
}

CombesThomasReport combes_thomas_probe(const AnalyticPotential& f, const Rational& pq,
                                       double theta, std::span<const double> E_list) {
  CombesThomasReport rep;
  const BandSet spec = sigma(f, pq, theta);
  const auto q = pq.q;
  rep.c_min = std::numeric_limits<double>::infinity();
  rep.identity_ok = true;

  for (const double E : E_list) {
    CombesThomasRow row;
    row.E = E;
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& iv : spec.intervals()) {
      if (E < iv.lo)
        dist = std::min(dist, iv.lo - E);
      else if (E > iv.hi)
        dist = std::min(dist, E - iv.hi);
      else
        dist = 0;
    }
    row.dist = dist;
    const LogTrace t = discriminant_trace_log(E, f, pq, theta, static_cast<int>(q));
    row.log_abs_delta = t.log_abs;
    const double lr = log_spectral_radius_from_trace(t);
    row.gamma = lr / static_cast<double>(q);

    if (dist > 0) {
      row.c_empirical = t.log_abs / (static_cast<double>(q) * std::min(dist, 1.0));
      rep.c_min = std::min(rep.c_min, row.c_empirical);
      // |D_q| = e^{q gamma} + e^{-q gamma} off the bands: compare in a scaled
      // form that stays finite, |D_q| e^{-q gamma} = 1 + e^{-2 q gamma}.
      const double lhs = std::exp(t.log_abs - lr);
      const double rhs = 1.0 + std::exp(-2.0 * lr);
      row.identity_residual = std::abs(lhs - rhs) / rhs;
    } else {
      row.c_empirical = 0;
      row.identity_residual = 0;
    }
    rep.identity_ok = rep.identity_ok && row.identity_residual <= 1e-9;
    rep.rows.push_back(row);
  }
  if (!std::isfinite(rep.c_min)) rep.c_min = 0;  // every E landed on the spectrum
  return rep;
}

ConjectureReport conjecture_probe(const AnalyticPotential& f, std::span<const Rational> cv,
                                  std::span<const double> E_grid,
                                  std::span<const double> eps_list, double gamma_tol,
                                  int theta_count) {
  if (cv.size() < 2) throw std::invalid_argument("conjecture_probe: need >= 2 convergents");
  ConjectureReport rep;
  rep.a_set = a_set_estimate(f, cv, E_grid, gamma_tol,
                             std::numeric_limits<std::int64_t>::max(), theta_count);

  std::vector<BandSet> sminus_sets(cv.size());
  for (std::size_t k = 0; k < cv.size(); ++k) {
    const auto& pq = cv[k];
    const int m = static_cast<int>(std::max<std::int64_t>(16 * pq.q, 16));
    sminus_sets[k] = s_minus(f, pq, m).bands;
    ConjectureRow row;
    row.pq = pq;
    row.hausdorff_sminus_aset = BandSet::hausdorff(sminus_sets[k], rep.a_set.cells);
    row.symdiff_sminus_aset =
        sminus_sets[k].symmetric_difference_measure(rep.a_set.cells);
    for (const double eps : eps_list) {
      const auto se = s_minus_eps(f, pq, eps, m).bands;
      row.eps_rows.emplace_back(eps, se.difference(rep.a_set.cells).measure());
    }
    rep.rows.push_back(std::move(row));
  }

  // Inclusion direction: a grid cell inside S_-(p/q) for every deep convergent
  // should land in the A-set estimate.
  const double step = E_grid.size() > 1 ? E_grid[1] - E_grid[0] : 0;
  const std::size_t half = cv.size() / 2;
  rep.inclusion_direction_ok = true;
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    const double a = E_grid[i] - 0.5 * step, b = E_grid[i] + 0.5 * step;
    bool in_all = true;
    for (std::size_t k = half; k < cv.size(); ++k)
      in_all = in_all && sminus_sets[k].contains_interval(a, b, 1e-12);
    if (!in_all) continue;
    ++rep.cells_in_all_sminus;
    if (!rep.a_set.cells.contains_interval(a, b, 1e-12)) rep.inclusion_direction_ok = false;
  }
  rep.cells_checked = static_cast<int>(E_grid.size());
  return rep;
}

LyapunovCurve lyapunov_curve_rational(const AnalyticPotential& f, const Rational& pq,
                                      std::span<const double> E_grid, int theta_count) {
  LyapunovCurve c;
  c.E.assign(E_grid.begin(), E_grid.end());
  c.gamma.resize(E_grid.size());
  c.alpha_desc = pq.str();
  c.method = "rational-exact";
  parallel_for(E_grid.size(), [&](std::size_t i) {
    c.gamma[i] = bar_gamma_rational(E_grid[i], f, pq, theta_count);
  });
  return c;
}

LyapunovCurve lyapunov_curve_mn(const AnalyticPotential& f, const Frequency& alpha,
                                std::span<const double> E_grid, std::span<const int> n_list) {
  LyapunovCurve c;
  c.E.assign(E_grid.begin(), E_grid.end());
  c.gamma.resize(E_grid.size());
  c.alpha_desc = alpha.str();
  c.method = "mn-limsup";
  parallel_for(E_grid.size(), [&](std::size_t i) {
    c.gamma[i] = bar_gamma_mn(E_grid[i], f, alpha, n_list).value;
  });
  return c;
}

}  // namespace quasispec
