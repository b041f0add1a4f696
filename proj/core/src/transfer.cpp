#include "quasispec/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace quasispec {

namespace {

constexpr double ln2 = 0.69314718055994530941723212145817657;

// Rescale so max-abs lands in [1/2, 1): exact power-of-two, mantissas intact.
inline void normalize(ScaledMatrix& s) {
  const double ma = s.m.max_abs();
  if (ma == 0 || !std::isfinite(ma)) return;
  const int k = std::ilogb(ma) + 1;  // 2^{-k} ma in [1/2, 1)
  if (k == 0) return;
  s.m.a11 = std::ldexp(s.m.a11, -k);
  s.m.a12 = std::ldexp(s.m.a12, -k);
  s.m.a21 = std::ldexp(s.m.a21, -k);
  s.m.a22 = std::ldexp(s.m.a22, -k);
  s.log_scale += k * ln2;
}

}  // namespace

Mat2 ScaledMatrix::represented() const {
  const double s = std::exp(log_scale);
  return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

ScaledMatrix phi_from_sequence(double E, std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("phi_from_sequence: empty potential sequence");
  ScaledMatrix s = ScaledMatrix::identity();
  for (const double vn : v) {
    s.m = one_step(E, vn) * s.m;
    const double ma = s.m.max_abs();
    // Lazy renormalization: exact powers of two keep every intermediate value
    // a fixed 2^j multiple of the eager variant, so results match bitwise.
    if (ma > 256.0 || ma < 0.00390625) normalize(s);
  }
  normalize(s);
  return s;
}

ScaledMatrix phi_n(double E, const AnalyticPotential& f, const Frequency& alpha, double theta,
                   int n) {
  if (n < 1) throw std::invalid_argument("phi_n: n must be >= 1");
  ScaledMatrix s = ScaledMatrix::identity();
  const double theta_red = std::remainder(theta, two_pi);
  for (int k = 1; k <= n; ++k) {
    const double vk = f(two_pi * alpha.orbit_fraction(k) + theta_red);
    s.m = one_step(E, vk) * s.m;
    const double ma = s.m.max_abs();
    if (ma > 256.0 || ma < 0.00390625) normalize(s);
  }
  normalize(s);
  return s;
}

LogTrace trace_log(const ScaledMatrix& phi) {
  const double t = phi.m.trace();
  if (t == 0) return {};
  return {phi.log_scale + std::log(std::abs(t)), t > 0 ? 1 : -1};
}

double discriminant_trace(double E, const AnalyticPotential& f, const Frequency& alpha,
                          double theta, int n) {
  return trace_log(phi_n(E, f, alpha, theta, n)).value();
}

LogTrace discriminant_trace_log(double E, const AnalyticPotential& f, const Frequency& alpha,
                                double theta, int n) {
  return trace_log(phi_n(E, f, alpha, theta, n));
}

}  // namespace quasispec
