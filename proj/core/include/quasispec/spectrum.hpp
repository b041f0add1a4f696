// Spectra of the periodic approximants: band structure from the discriminant,
// independent Bloch eigenvalue oracle, phase-uniform spectra S_-, and the
// phase measure Upsilon(E).
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "quasispec/bandset.hpp"
#include "quasispec/discriminant.hpp"

namespace quasispec {

// 2 + max|f| + 0.5: every band of every approximant lies in [-R, R].
double enclosing_energy_bound(const AnalyticPotential& f);

// sigma(p/q, theta) = {E : |D_q(E; theta)| <= 2}: sign-scan of D_q -+ 2 on a
// 64q grid over [-R, R], bisection to 1e-12, midpoint classification, touching
// bands merged. Throws std::runtime_error on inconsistent root structure
// (more than q bands or unordered crossings).
BandSet sigma(const AnalyticPotential& f, const Rational& pq, double theta);

// Same spectrum from the q x q Bloch Hermitian matrices H(kappa) with hopping
// twist e^{i kappa}: band i = [min_kappa lambda_i, max_kappa lambda_i] over a
// uniform kappa grid of k_grid_size points on the circle (kappa and -kappa
// give equal spectra, so only k_grid_size/2 + 1 eigensolves run; kappa = 0,
// pi included so band edges are exact). Independent of the transfer-matrix
// path end to end.
BandSet bloch_oracle(const AnalyticPotential& f, const Rational& pq, double theta,
                     std::size_t k_grid_size);

struct SMinusResult {
  BandSet bands;
  int theta_samples = 0;  // nodes across one fundamental period [0, 2pi/q)
  double theta_step = 0;
};

// S_-(p/q) ~ intersection over theta of sigma(p/q, theta), theta on a uniform
// grid of theta_count nodes spanning [0, 2pi/q) (D_q is 2pi/q periodic in
// theta). theta_count < 16 throws std::invalid_argument.
SMinusResult s_minus(const AnalyticPotential& f, const Rational& pq, int theta_count);

// S_-(p/q, eps): intersection over theta of {E : |D_q| <= 2 + eps} (eps >= 0).
SMinusResult s_minus_eps(const AnalyticPotential& f, const Rational& pq, double eps,
                         int theta_count);

struct UpsilonResult {
  double measure = 0;            // Lebesgue measure of {theta : E in sigma(p/q, theta)}
  bool boundary_degenerate = false;  // |D_q| == 2 on a whole circle / tangency detected
  int boundary_roots = 0;
};

// Upsilon(E, p/q) via the Fourier side: D_q(E; theta) restricted to modes
// kq, |k| <= d, is a trig poly G(phi) in phi = q theta; roots of G -+ 2 come
// from companion-matrix eigenvalues on the unit circle (Newton-polished),
// and {theta : |D_q| <= 2} has the same measure as {phi : |G| <= 2}.
UpsilonResult upsilon_measure(double E, const AnalyticPotential& f, const Rational& pq);

struct Theorem3Row {
  double E = 0;
  double gamma_bar = 0;              // at the deepest convergent
  std::vector<double> measures;      // Upsilon(E, p_i/q_i), aligned with qs
  double fitted_slope = 0;           // LS slope of ln Upsilon vs q
  double bound_slope = 0;            // -(gamma_bar - eps) / (2 d)
  bool in_scope = false;             // gamma_bar > eps
  bool decay_ok = false;             // in_scope && fitted_slope <= bound_slope
  int positive_points = 0;           // measures > 0 entering the fit
};

struct Theorem3Report {
  int d = 0;
  double eps = 0;
  std::vector<Rational> qs;
  std::vector<Theorem3Row> rows;
  // sum_E Upsilon(E, p_i/q_i) dE per convergent: Fubini says this equals
  // int_Theta |sigma| d theta / (2 pi), so it should stay O(total bandwidth).
  std::vector<double> fubini_integral;
};

// Exponential-decay probe for the phase measure along a convergent ladder
// (needs >= 3 convergents, trig-poly f; throws std::invalid_argument
// otherwise). theta_count controls the gamma_bar estimate.
Theorem3Report theorem3_probe(const AnalyticPotential& f, std::span<const Rational> convergents,
                              std::span<const double> E_grid, double eps,
                              int theta_count = 1024);

}  // namespace quasispec
