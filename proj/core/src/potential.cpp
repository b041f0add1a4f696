#include "quasispec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quasispec {

const Rational& Frequency::rational() const {
  if (!pq_) throw std::logic_error("Frequency: not rational");
  return *pq_;
}

double Frequency::orbit_fraction(std::int64_t n) const {
  if (pq_) return pq_->orbit_fraction(n);
  // Exact split of alpha * n into hi + lo (fma), then the fractional part.
  // hi - floor(hi) is exact for |hi| < 2^53, so the only rounding is the
  // final addition of lo: one ulp of the result.
  const double nn = static_cast<double>(n);
  const double hi = alpha_ * nn;
  if (std::abs(hi) >= 9.0e15)
    throw std::invalid_argument("Frequency::orbit_fraction: |alpha*n| too large");
  const double lo = std::fma(alpha_, nn, -hi);
  double r = (hi - std::floor(hi)) + lo;
  if (r < 0) r += 1;
  if (r >= 1) r -= 1;
  return r;
}

std::string Frequency::str() const {
  if (pq_) return pq_->str();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", alpha_);
  return buf;
}

AnalyticPotential::AnalyticPotential(Coeffs coeffs, double strip_width,
                                     std::optional<int> declared_degree)
    : eta_(strip_width), degree_(declared_degree) {
  if (!(eta_ > 0)) throw std::invalid_argument("AnalyticPotential: strip_width must be > 0");
  if (degree_ && *degree_ < 1)
    throw std::invalid_argument("AnalyticPotential: declared degree must be >= 1");

  double scale = 0;
  for (const auto& [k, a] : coeffs) scale = std::max(scale, std::abs(a));
  const double tol = 1e-12 * std::max(scale, 1.0);

  // Hermitian completion: add missing partners, reject inconsistent ones.
  for (const auto& [k, a] : coeffs) {
    auto it = coeffs.find(-k);
    if (it == coeffs.end()) continue;
    if (std::abs(it->second - std::conj(a)) > tol)
      throw std::invalid_argument(
          "AnalyticPotential: coefficients violate a(-k) = conj(a(k))");
  }
  coeffs_ = coeffs;
  for (const auto& [k, a] : coeffs)
    if (coeffs_.find(-k) == coeffs_.end()) coeffs_[-k] = std::conj(a);
  if (auto it = coeffs_.find(0); it != coeffs_.end()) {
    if (std::abs(it->second.imag()) > tol)
      throw std::invalid_argument("AnalyticPotential: a(0) must be real");
    it->second = it->second.real();
  }

  for (const auto& [k, a] : coeffs_) {
    const int ak = k < 0 ? -k : k;
    if (degree_ && ak > *degree_ && std::abs(a) > 0)
      throw std::invalid_argument(
          "AnalyticPotential: coefficient beyond the declared degree");
    if (std::abs(a) > 0) kmax_ = std::max(kmax_, ak);
  }

  // Real form: a_k e^{ik t} + conj(a_k) e^{-ik t} = 2 Re a_k cos kt - 2 Im a_k sin kt.
  ca_.assign(static_cast<std::size_t>(kmax_) + 1, 0.0);
  sb_.assign(static_cast<std::size_t>(kmax_) + 1, 0.0);
  if (auto it = coeffs_.find(0); it != coeffs_.end()) c0_ = it->second.real();
  for (int k = 1; k <= kmax_; ++k) {
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) continue;
    ca_[static_cast<std::size_t>(k)] = 2.0 * it->second.real();
    sb_[static_cast<std::size_t>(k)] = -2.0 * it->second.imag();
  }
}

AnalyticPotential AnalyticPotential::zero(double strip_width) {
  return AnalyticPotential(Coeffs{}, strip_width);
}

AnalyticPotential AnalyticPotential::cosine(double lambda, double strip_width) {
  if (lambda == 0) return zero(strip_width);
  return AnalyticPotential({{1, {lambda / 2, 0.0}}}, strip_width, 1);
}

std::complex<double> AnalyticPotential::eval(std::complex<double> z) const {
  if (std::abs(z.imag()) > eta_ * (1 + 1e-12) + 1e-300)
    throw std::domain_error("AnalyticPotential::eval: point outside the strip");
  std::complex<double> acc = 0;
  const std::complex<double> iz{-z.imag(), z.real()};  // i z
  for (const auto& [k, a] : coeffs_) acc += a * std::exp(static_cast<double>(k) * iz);
  return acc;
}

double AnalyticPotential::operator()(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double ck = 1, sk = 0;  // cos(k theta), sin(k theta)
  double acc = c0_;
  for (int k = 1; k <= kmax_; ++k) {
    const double cn = ck * c - sk * s;
    const double sn = sk * c + ck * s;
    ck = cn;
    sk = sn;
    acc += ca_[static_cast<std::size_t>(k)] * ck + sb_[static_cast<std::size_t>(k)] * sk;
  }
  return acc;
}

std::complex<double> AnalyticPotential::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

bool AnalyticPotential::is_zero() const {
  for (const auto& [k, a] : coeffs_)
    if (std::abs(a) > 0) return false;
  return true;
}

double AnalyticPotential::sum_abs_coeffs() const {
  double s = 0;
  for (const auto& [k, a] : coeffs_) s += std::abs(a);
  return s;
}

double AnalyticPotential::max_abs_real() const {
  double m = 0;
  for (int j = 0; j < 4096; ++j) m = std::max(m, std::abs((*this)(two_pi * j / 4096.0)));
  return m;
}

double AnalyticPotential::max_abs_in_strip(double eta) const {
  if (eta < 0 || eta > eta_ * (1 + 1e-12))
    throw std::invalid_argument("max_abs_in_strip: eta outside [0, strip_width]");
  double m = 0;
  for (int j = 0; j < 4096; ++j) {
    const double t = two_pi * j / 4096.0;
    m = std::max(m, std::abs(eval({t, -eta})));
  }
  return m;
}

int AnalyticPotential::truncation_degree(double energy_bound, double tail_tolerance) const {
  if (!(energy_bound > 0))
    throw std::invalid_argument("truncation_degree: energy_bound must be > 0");
  if (!(tail_tolerance > 0))
    throw std::invalid_argument("truncation_degree: tail_tolerance must be > 0");
  if (degree_) return *degree_;
  // Need (C1+R)^n e^{-d eta n} (2/(1-e^{-eta})) <= tol^n ... dominated by n=1:
  // d >= (ln(C1+R) - ln tol + ln 2 - log1p(-e^{-eta})) / eta.
  const double c1 = 2.0 + energy_bound + max_abs_in_strip(eta_);
  const double num = std::log(c1 + energy_bound) - std::log(tail_tolerance) +
                     std::log(2.0) - std::log1p(-std::exp(-eta_));
  const int d = static_cast<int>(std::ceil(num / eta_));
  return std::max(1, d);
}

double potential_at(const AnalyticPotential& f, const Frequency& alpha, double theta,
                    std::int64_t n) {
  // V(n) = f(2 pi frac(alpha n) + theta_red): same bits for n and n + q at
  // rational alpha since orbit_fraction is exactly q-periodic and the theta
  // reduction does not depend on n.
  const double theta_red = std::remainder(theta, two_pi);
  return f(two_pi * alpha.orbit_fraction(n) + theta_red);
}

std::vector<double> potential_sequence(const AnalyticPotential& f, const Frequency& alpha,
                                       double theta, int n_max) {
  if (n_max < 1) throw std::invalid_argument("potential_sequence: n_max must be >= 1");
  std::vector<double> v(static_cast<std::size_t>(n_max));
  const double theta_red = std::remainder(theta, two_pi);
  for (int n = 1; n <= n_max; ++n)
    v[static_cast<std::size_t>(n - 1)] = f(two_pi * alpha.orbit_fraction(n) + theta_red);
  return v;
}

}  // namespace quasispec
