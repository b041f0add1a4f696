// Lyapunov exponents of the approximants: exact gamma at rational alpha, the
// phase-averaged bar-gamma, the max-phase surrogate from ln M_n, the nearly
// zero set A(alpha), and the growth/decay inequality probes built on them.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasispec/spectrum.hpp"

namespace quasispec {

// ln spectral radius of a det-1 real 2x2 with |trace| given in log form:
// rho = |t|/2 + sqrt(t^2/4 - 1) for |t| > 2, else 1 (so the log is 0 exactly
// on bands).
double log_spectral_radius_from_trace(const LogTrace& t);

// gamma(E; p/q, theta) = (1/q) ln rho(Phi_q). Zero exactly when |D_q| <= 2.
double gamma_rational(double E, const AnalyticPotential& f, const Rational& pq, double theta);

struct BarGammaDetail {
  double value = 0;           // midpoint rule, theta_count nodes on [0, 2pi/q)
  double coarse = 0;          // same with theta_count/2 nodes
  double richardson = 0;      // (4 value - coarse) / 3
  double error_estimate = 0;  // |value - coarse| / 3
  int theta_count = 0;
};

// bar-gamma(E, p/q) = (1/2pi) int gamma(E; theta) d theta, computed over one
// fundamental period with a midpoint rule. theta_count >= 256 required.
double bar_gamma_rational(double E, const AnalyticPotential& f, const Rational& pq,
                          int theta_count);
BarGammaDetail bar_gamma_rational_detail(double E, const AnalyticPotential& f,
                                         const Rational& pq, int theta_count);

struct MnEstimate {
  double value = 0;  // max over n_list of (1/n) ln M_n
  std::vector<std::pair<int, double>> sequence;  // (n, (1/n) ln M_n)
};

// limsup surrogate bar-gamma ~ max_{n in n_list} (1/n) ln M_n(E). The max is
// over exactly the given list: small n overshoot the limit (the sequence
// decreases like + log(...)/n), so callers pass large n (e.g. Fibonacci).
MnEstimate bar_gamma_mn(double E, const AnalyticPotential& f, const Frequency& alpha,
                        std::span<const int> n_list);

struct ASetEstimate {
  BandSet cells;        // union of E-grid cells with bar-gamma < gamma_tol
  double gamma_tol = 0;
  Rational q_used;      // deepest convergent with q <= q_max
  std::int64_t q_max = 0;
  int theta_count = 0;
  std::vector<double> gamma_values;  // bar-gamma at each E-grid node
};

// A(alpha) ~ {E : bar-gamma(E, p_k/q_k) < gamma_tol} at the deepest convergent
// with q_k <= q_max. E_grid must be uniform and sorted (cells are grid cells).
ASetEstimate a_set_estimate(const AnalyticPotential& f, std::span<const Rational> convergents,
                            std::span<const double> E_grid, double gamma_tol,
                            std::int64_t q_max, int theta_count = 1024);

struct HermanFreqRow {
  Rational pq;
  double min_margin = 0;   // min_E (bar-gamma - ln+|a_d|), + allowance
  double worst_E = 0;
  bool bound_ok = false;
  bool emptiness_applicable = false;  // q > q_threshold and |a_d| > 1
  bool s_minus_empty = false;
  bool emptiness_ok = true;  // vacuous when not applicable
};

struct HermanReport {
  int d = 0;
  double lnplus_ad = 0;        // ln+ |a_d|
  double tolerance = 0;        // quadrature allowance used in the bound check
  double q_threshold = 0;      // 1 / (2 log2 |a_d|), +inf when |a_d| <= 1
  std::vector<HermanFreqRow> rows;
  bool bound_ok = false;       // all rows
  bool emptiness_ok = false;   // all applicable rows
};

// Herman-style check: bar-gamma(E, p/q) >= ln+|a_d| - tolerance for every E in
// E_grid and every listed frequency, and S_-(p/q) = empty once
// q > 1/(2 log2 |a_d|) (only meaningful for |a_d| > 1). Trig-poly f required.
HermanReport herman_check(const AnalyticPotential& f, std::span<const Rational> freqs,
                          std::span<const double> E_grid, int theta_count = 1024,
                          int s_minus_theta_count = 0 /* 0 -> 16 q */);

struct CombesThomasRow {
  double E = 0;
  double dist = 0;              // dist(E, sigma(p/q, theta))
  double log_abs_delta = 0;     // ln |D_q(E)|
  double gamma = 0;             // gamma(E; p/q, theta)
  double c_empirical = 0;       // ln|D_q| / (q min(dist, 1)); growth certificate
  double identity_residual = 0; // | |D_q| - (e^{q gamma} + e^{-q gamma}) | rel.
};

struct CombesThomasReport {
  std::vector<CombesThomasRow> rows;
  double c_min = 0;         // over rows with dist > 0
  bool identity_ok = false; // residual <= 1e-9 on every row
};

// Off-spectrum growth probe: |D_q(E)| >= e^{c q min(dist,1)} with the
// empirical c reported, plus the exact identity |D_q| = e^{q gamma} + e^{-q gamma}
// (valid outside the spectrum) as a cross-check of gamma itself.
CombesThomasReport combes_thomas_probe(const AnalyticPotential& f, const Rational& pq,
                                       double theta, std::span<const double> E_list);

struct ConjectureRow {
  Rational pq;
  double hausdorff_sminus_aset = 0;           // d_H(S_-(p/q), A_est)
  double symdiff_sminus_aset = 0;             // |S_- triangle A_est|
  std::vector<std::pair<double, double>> eps_rows;  // (eps, |S_-(p/q,eps) \ A_est|)
};

struct ConjectureReport {
  ASetEstimate a_set;
  std::vector<ConjectureRow> rows;
  // every E-cell inside S_-(p/q) for all tested large q also sits in A_est
  bool inclusion_direction_ok = false;
  int cells_checked = 0;
  int cells_in_all_sminus = 0;
};

// Limit-set comparison along a convergent ladder: does S_-(p_k/q_k) (and its
// eps fattenings) home in on the estimated A(alpha)?
ConjectureReport conjecture_probe(const AnalyticPotential& f,
                                  std::span<const Rational> convergents,
                                  std::span<const double> E_grid,
                                  std::span<const double> eps_list, double gamma_tol,
                                  int theta_count = 1024);

struct LyapunovCurve {
  std::vector<double> E;
  std::vector<double> gamma;
  std::string alpha_desc;
  std::string method;  // "rational-exact" or "mn-limsup"
};

LyapunovCurve lyapunov_curve_rational(const AnalyticPotential& f, const Rational& pq,
                                      std::span<const double> E_grid, int theta_count);
LyapunovCurve lyapunov_curve_mn(const AnalyticPotential& f, const Frequency& alpha,
                                std::span<const double> E_grid, std::span<const int> n_list);

}  // namespace quasispec
