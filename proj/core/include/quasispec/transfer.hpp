// Transfer-matrix cocycle: one-step matrices, renormalized products, and the
// discriminant trace in log form.
#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "quasispec/potential.hpp"

namespace quasispec {

struct Mat2 {
  double a11 = 1, a12 = 0, a21 = 0, a22 = 1;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
};

// T(E, v) = [[E - v, -1], [1, 0]]; det = 1.
inline Mat2 one_step(double E, double v) { return {E - v, -1.0, 1.0, 0.0}; }

// M = e^{log_scale} * m. Products rescale lazily (only when the max-abs entry
// leaves [2^-8, 2^8]) and normalize the final result to max-abs in [1/2, 1).
// Rescaling uses exact powers of two, so log_scale is exact up to the single
// rounding of k*ln2 and m's entries lose no mantissa bits.
struct ScaledMatrix {
  Mat2 m;
  double log_scale = 0;

  static ScaledMatrix identity() { return {Mat2{}, 0.0}; }

  // log of the Frobenius norm of the represented matrix.
  double log_norm() const {
    double f = std::sqrt(m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22);
    return log_scale + std::log(f);
  }
  // e^{log_scale} * m; overflows to +-inf for log_scale >~ 710 (documented,
  // prefer log-form accessors).
  Mat2 represented() const;
  // |log|det M||; ~0 for products of one-step matrices, but only diagnostic
  // while e^{2 log_scale} * eps_machine stays below the tolerance in use: the
  // mantissa determinant shrinks like e^{-2 log_scale} and below ~1e-16 it is
  // cancellation noise, so long hyperbolic products yield a large residual
  // regardless of how faithfully they were multiplied.
  double det_log_residual() const {
    return std::abs(2.0 * log_scale + std::log(std::abs(m.det())));
  }
};

// value = sign * e^{log_abs}; sign = 0 iff the trace is exactly zero.
struct LogTrace {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  // May overflow to +-inf for log_abs >~ 710; never silent garbage.
  double value() const {
    return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_abs);
  }
};

// Product T_n ... T_2 T_1 for a given potential sequence [V(1..n)] (v may be
// longer than the product actually uses; pass v.first(n) to shorten).
ScaledMatrix phi_from_sequence(double E, std::span<const double> v);

// Phi_n(E; alpha, theta) = T_n ... T_1 with V(k) = f(2 pi alpha k + theta).
// Throws std::invalid_argument for n < 1.
ScaledMatrix phi_n(double E, const AnalyticPotential& f, const Frequency& alpha,
                   double theta, int n);

LogTrace trace_log(const ScaledMatrix& phi);

// D_n(E) = tr Phi_n, in plain and log form.
double discriminant_trace(double E, const AnalyticPotential& f, const Frequency& alpha,
                          double theta, int n);
LogTrace discriminant_trace_log(double E, const AnalyticPotential& f, const Frequency& alpha,
                                double theta, int n);

}  // namespace quasispec
