// Analytic sampling functions f(theta) = sum_k a_k e^{ik theta} and the
// quasi-periodic potentials V(n) = f(2 pi alpha n + theta) they generate.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quasispec/rationals.hpp"

namespace quasispec {

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

// Frequency alpha: either an exact Rational p/q or a double. Rational orbits
// 2 pi alpha n + theta are reduced in integer arithmetic (bitwise q-periodic);
// double orbits use an exact two-product split, so frac(alpha n) is correct to
// one ulp even for large n.
class Frequency {
 public:
  Frequency(double alpha) : alpha_(alpha) {}                      // NOLINT implicit
  Frequency(const Rational& pq) : pq_(pq), alpha_(pq.value()) {}  // NOLINT implicit

  bool is_rational() const { return pq_.has_value(); }
  const Rational& rational() const;  // throws std::logic_error if not rational
  double value() const { return alpha_; }
  double orbit_fraction(std::int64_t n) const;  // frac(alpha * n) in [0,1)
  std::string str() const;

 private:
  std::optional<Rational> pq_;
  double alpha_ = 0;
};

// Real-analytic f on a strip |Im z| <= eta, represented by Fourier
// coefficients a_k with a_{-k} = conj(a_k) (so f is real on the real line).
// Construction completes missing partners a_{-k} = conj(a_k) and rejects
// inconsistent pairs. If declared_degree is set, f is a trigonometric
// polynomial of exactly that (maximal) degree bound.
class AnalyticPotential {
 public:
  using Coeffs = std::map<int, std::complex<double>>;

  AnalyticPotential(Coeffs coeffs, double strip_width,
                    std::optional<int> declared_degree = std::nullopt);

  static AnalyticPotential zero(double strip_width = 1.0);
  // lambda * cos(theta): the almost Mathieu sampling function, degree 1.
  static AnalyticPotential cosine(double lambda, double strip_width = 1.0);

  // f at complex z; throws std::domain_error when |Im z| > strip_width.
  std::complex<double> eval(std::complex<double> z) const;
  // Fast real-axis path (Chebyshev-style recurrence, two libm calls total).
  double operator()(double theta) const;

  const Coeffs& coeffs() const { return coeffs_; }
  std::complex<double> coeff(int k) const;
  double strip_width() const { return eta_; }
  std::optional<int> declared_degree() const { return degree_; }
  bool is_zero() const;

  double sum_abs_coeffs() const;
  double max_abs_real() const;                // max_theta |f(theta)|, 4096-grid
  double max_abs_in_strip(double eta) const;  // max_theta |f(theta - i eta)|

  // Smallest d such that truncating f to degree d perturbs every length-n
  // transfer product by at most tail_tolerance in operator norm, uniformly for
  // |E| <= energy_bound (tail bound (C1+R)^n * e^{-d eta n} * 2/(1-e^{-eta}),
  // C1 = 2 + R + max|f| on the strip; worst case n = 1). Returns
  // declared_degree when set. Throws std::invalid_argument for
  // energy_bound <= 0 or tail_tolerance <= 0.
  int truncation_degree(double energy_bound, double tail_tolerance) const;

 private:
  Coeffs coeffs_;
  double eta_ = 1.0;
  std::optional<int> degree_;
  // dense real form f = c0 + sum_{k=1..kmax} (ca_k cos k theta + sb_k sin k theta)
  double c0_ = 0;
  std::vector<double> ca_, sb_;
  int kmax_ = 0;
};

// V(n) = f(2 pi alpha n + theta), n = 1-based index.
double potential_at(const AnalyticPotential& f, const Frequency& alpha, double theta,
                    std::int64_t n);

// [V(1), ..., V(n_max)]. For rational alpha = p/q the sequence is bitwise
// q-periodic. Throws std::invalid_argument for n_max < 1.
std::vector<double> potential_sequence(const AnalyticPotential& f, const Frequency& alpha,
                                       double theta, int n_max);

}  // namespace quasispec
