#include "quasispec/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quasispec/fft.hpp"

namespace quasispec {

namespace {

// (base)^n by binary exponentiation: deterministic, no pow() branch cuts.
std::complex<double> ipow(std::complex<double> base, int n) {
  std::complex<double> r = 1;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

// e^{+i pi alpha d n (n+1)} with the phase reduced exactly: the phase over
// 2 pi is alpha * M with M = d n (n+1) / 2 an integer, so frac(alpha M) comes
// from the same exact reduction the potential orbit uses.
std::complex<double> leading_phase(const Frequency& alpha, int d, int n) {
  const std::int64_t m = static_cast<std::int64_t>(d) * n * (n + 1) / 2;
  const double frac = alpha.orbit_fraction(m);
  const double ang = two_pi * frac;
  return {std::cos(ang), std::sin(ang)};
}

int required_degree(const AnalyticPotential& f) {
  if (!f.declared_degree())
    throw std::invalid_argument("leading coefficient: f must be a trig polynomial "
                                "(declared degree required)");
  return *f.declared_degree();
}

}  // namespace

DiscriminantSample::DiscriminantSample(double energy, Frequency freq, int n,
                                       std::vector<double> values)
    : energy_(energy), freq_(std::move(freq)), n_(n), values_(std::move(values)) {
  const std::size_t N = values_.size();
  if (N == 0 || (N & (N - 1)) != 0)
    throw std::invalid_argument("DiscriminantSample: grid size must be a power of two");
  std::vector<std::complex<double>> buf(values_.begin(), values_.end());
  fft_radix2(buf, false);
  const double inv = 1.0 / static_cast<double>(N);
  for (auto& c : buf) c *= inv;  // forward bins /N estimate (1/2pi) int D e^{-ik}
  fourier_ = std::move(buf);
}

std::complex<double> DiscriminantSample::coeff(int k) const {
  const auto N = static_cast<std::int64_t>(fourier_.size());
  if (k > N / 2 || k < -N / 2) throw std::out_of_range("DiscriminantSample::coeff: |k| > N/2");
  const std::int64_t j = k >= 0 ? k : k + N;
  return fourier_[static_cast<std::size_t>(j % N)];
}

double DiscriminantSample::max_abs_value() const {
  double m = 0;
  for (const double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double DiscriminantSample::parseval_residual() const {
  double mean_sq = 0;
  for (const double v : values_) mean_sq += v * v;
  mean_sq /= static_cast<double>(values_.size());
  double sum_c = 0;
  for (const auto& c : fourier_) sum_c += std::norm(c);
  return std::abs(mean_sq - sum_c) / std::max(mean_sq, 1.0);
}

std::size_t default_grid_size(const AnalyticPotential& f, int n, double energy_bound) {
  const int d = f.truncation_degree(std::max(energy_bound, 1.0), std::exp(-1.0));
  const std::size_t need = static_cast<std::size_t>(4) * static_cast<std::size_t>(d) *
                               static_cast<std::size_t>(n) + 4;
  return next_pow2(std::max<std::size_t>(need, 64));
}

DiscriminantSample sample_discriminant(double E, const AnalyticPotential& f,
                                       const Frequency& alpha, int n, std::size_t N) {
  if (n < 1) throw std::invalid_argument("sample_discriminant: n must be >= 1");
  if (N == 0) N = default_grid_size(f, n, std::max(std::abs(E), 1.0));
  if ((N & (N - 1)) != 0)
    throw std::invalid_argument("sample_discriminant: grid size must be a power of two");
  std::vector<double> vals(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double theta = two_pi * static_cast<double>(j) / static_cast<double>(N);
    vals[j] = discriminant_trace(E, f, alpha, theta, n);
  }
  return DiscriminantSample(E, alpha, n, std::move(vals));
}

double check_period_collapse(const DiscriminantSample& s) {
  if (!s.frequency().is_rational())
    throw std::logic_error("check_period_collapse: frequency must be rational");
  const auto q = s.frequency().rational().q;
  if (s.n() != q)
    throw std::logic_error("check_period_collapse: sample must have n == q");
  const auto N = static_cast<std::int64_t>(s.grid_size());
  double worst = 0;
  for (std::int64_t j = 0; j < N; ++j) {
    const std::int64_t k = j <= N / 2 ? j : j - N;  // bin j holds mode k
    if (k % q == 0) continue;
    worst = std::max(worst, std::abs(s.spectrum()[static_cast<std::size_t>(j)]));
  }
  return worst;
}

LeadingPair expected_leading_coeff(const AnalyticPotential& f, const Frequency& alpha,
                                   int n) {
  const int d = required_degree(f);
  const std::complex<double> ad = f.coeff(d);
  if (std::abs(ad) == 0)
    throw std::invalid_argument("expected_leading_coeff: top coefficient a_d vanishes");
  const std::complex<double> ph = leading_phase(alpha, d, n);
  return {ipow(-ad, n) * ph, ipow(-std::conj(ad), n) * std::conj(ph)};
}

LeadingPair leading_coeff_no_sign_variant(const AnalyticPotential& f, const Frequency& alpha,
                                          int n) {
  const int d = required_degree(f);
  const std::complex<double> ad = f.coeff(d);
  if (std::abs(ad) == 0)
    throw std::invalid_argument("leading_coeff_no_sign_variant: a_d vanishes");
  const std::complex<double> ph = leading_phase(alpha, d, n);
  return {ipow(ad, n) * ph, ipow(std::conj(ad), n) * std::conj(ph)};
}

LeadCoeffComparison compare_leading_coeff(const AnalyticPotential& f, const Rational& pq,
                                          double E) {
  const int d = required_degree(f);
  const int n = static_cast<int>(pq.q);
  const auto s = sample_discriminant(E, f, pq, n);
  LeadCoeffComparison c;
  c.sampled = {s.coeff(d * n), s.coeff(-d * n)};
  c.with_sign = expected_leading_coeff(f, pq, n);
  c.without_sign = leading_coeff_no_sign_variant(f, pq, n);
  // Coefficient extraction carries absolute roundoff ~ eps * max|D_n|, so a
  // closed-form coefficient smaller than ~1e-4 * max|D_n| cannot be compared
  // at 1e-9 in a purely relative sense; the scale floor keeps the comparison
  // at the resolution double precision actually supports.
  const double scale = std::max(std::abs(c.with_sign.plus),
                                1e-4 * std::max(1.0, s.max_abs_value()));
  c.err_with_sign = std::max(std::abs(c.sampled.plus - c.with_sign.plus),
                             std::abs(c.sampled.minus - c.with_sign.minus)) / scale;
  c.err_without_sign = std::max(std::abs(c.sampled.plus - c.without_sign.plus),
                                std::abs(c.sampled.minus - c.without_sign.minus)) / scale;
  c.with_sign_matches = c.err_with_sign <= 1e-9;
  c.without_sign_matches = c.err_without_sign <= 1e-9;
  return c;
}

double chambers_residual(const AnalyticPotential& f, const Rational& pq, double E) {
  const int d = required_degree(f);
  if (d != 1)
    throw std::invalid_argument("chambers_residual: needs a degree-1 sampling function");
  const int n = static_cast<int>(pq.q);
  const auto s = sample_discriminant(E, f, pq, n);
  const auto lead = expected_leading_coeff(f, pq, n);
  const std::complex<double> c0 = s.coeff(0);

  const auto N = s.grid_size();
  double worst = 0;
  for (std::size_t j = 0; j < N; ++j) {
    const double ang = two_pi * static_cast<double>(n) * static_cast<double>(j) /
                       static_cast<double>(N);
    const std::complex<double> e{std::cos(ang), std::sin(ang)};
    const std::complex<double> rec = c0 + lead.plus * e + lead.minus * std::conj(e);
    worst = std::max(worst, std::abs(s.values()[j] - rec.real()));
  }
  return worst;
}

double m_n(double E, const AnalyticPotential& f, const Frequency& alpha, int n) {
  if (n < 1) throw std::invalid_argument("m_n: n must be >= 1");
  const int d = f.truncation_degree(std::max(std::abs(E), 1.0), std::exp(-1.0));
  const std::size_t grid = std::max<std::size_t>(1024, static_cast<std::size_t>(4) *
                                                           static_cast<std::size_t>(d) *
                                                           static_cast<std::size_t>(n));
  auto g = [&](double theta) {
    return discriminant_trace_log(E, f, alpha, theta, n).log_abs;
  };

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_j = 0;
  std::vector<double> vals(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double theta = two_pi * static_cast<double>(j) / static_cast<double>(grid);
    vals[j] = g(theta);
    if (vals[j] > best) {
      best = vals[j];
      best_j = j;
    }
  }

  // Golden-section around the best node. The log-peak curvature of a degree-dn
  // trig poly is at most (dn)^2, so a bracket of width w costs ~ (dn w)^2 / 2;
  // shrink until that is ~1e-8.
  const double h = two_pi / static_cast<double>(grid);
  double lo = h * (static_cast<double>(best_j) - 1.0);
  double hi = h * (static_cast<double>(best_j) + 1.0);
  const double target = 1.4e-4 / (static_cast<double>(d) * n + 1.0);
  const double r = 0.61803398874989484820458683436563812;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  best = std::max(best, std::max(f1, f2));
  for (int it = 0; it < 80 && (hi - lo) > target; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = g(x2);
      best = std::max(best, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = g(x1);
      best = std::max(best, f1);
    }
  }
  return best;
}

}  // namespace quasispec
