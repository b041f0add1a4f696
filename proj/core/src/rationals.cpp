#include "quasispec/rationals.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace quasispec {

namespace mp = boost::multiprecision;
using real50 = mp::cpp_bin_float_50;

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  p = g ? num / g : num;
  q = g ? den / g : den;
}

double Rational::orbit_fraction(std::int64_t n) const {
  // ((p mod q) * (n mod q)) mod q, all factors in [0, q) so the product stays
  // well inside int64 for q <= ~3e9.
  const std::int64_t pm = ((p % q) + q) % q;
  const std::int64_t nm = ((n % q) + q) % q;
  const std::int64_t r = (pm * nm) % q;
  return static_cast<double>(r) / static_cast<double>(q);
}

std::string Rational::str() const {
  return std::to_string(p) + "/" + std::to_string(q);
}

namespace {

std::vector<Rational> convergents_of(const real50& alpha, int count) {
  if (count < 1) throw std::invalid_argument("convergents: count must be >= 1");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("convergents: alpha must lie in (0,1)");

  // p_k = a_k p_{k-1} + p_{k-2}, likewise q_k; seeded so the 0th convergent
  // is a_0/1 = 0/1.
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  std::int64_t pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
  std::int64_t p0 = 0, q0 = 1;    // p_0 = a_0 = 0
  out.emplace_back(p0, q0);

  const real50 precision_floor{"1e-42"};
  real50 x = alpha;  // fractional remainder at the current depth
  for (int k = 1; k < count; ++k) {
    if (x < precision_floor)
      throw std::runtime_error(
          "convergents: alpha is rational within working precision; "
          "construct the frequency as a Rational p/q instead");
    const real50 y = 1 / x;
    real50 af = floor(y);
    if (af > real50{"9e14"})
      throw std::runtime_error(
          "convergents: partial quotient exceeds 9e14, alpha is "
          "indistinguishable from a rational at working precision; use a "
          "Rational frequency");
    const auto a = static_cast<std::int64_t>(af);
    const std::int64_t pk = a * p0 + pm1;
    const std::int64_t qk = a * q0 + qm1;
    if (qk < q0 || qk > (std::int64_t{1} << 60))
      throw std::runtime_error("convergents: denominator overflow");
    out.emplace_back(pk, qk);
    pm1 = p0;
    qm1 = q0;
    p0 = pk;
    q0 = qk;
    x = y - af;
  }
  return out;
}

std::vector<std::int64_t> terms_from(const std::vector<Rational>& cv) {
  // a_k recovered from the recurrence: a_k = (q_k - q_{k-2}) / q_{k-1}.
  std::vector<std::int64_t> terms;
  for (std::size_t k = 1; k < cv.size(); ++k) {
    const std::int64_t qkm2 = k >= 2 ? cv[k - 2].q : 0;
    terms.push_back((cv[k].q - qkm2) / cv[k - 1].q);
  }
  return terms;
}

std::string decimal_of(const real50& x) { return x.str(50, std::ios_base::fixed); }

}  // namespace

std::vector<Rational> convergents(const std::string& decimal_alpha, int count) {
  real50 alpha;
  try {
    alpha = real50(decimal_alpha);
  } catch (const std::exception&) {
    throw std::invalid_argument("convergents: cannot parse '" + decimal_alpha +
                                "' as a decimal real");
  }
  return convergents_of(alpha, count);
}

IrrationalTarget IrrationalTarget::from_decimal(const std::string& digits, int count) {
  real50 x;
  try {
    x = real50(digits);
  } catch (const std::exception&) {
    throw std::invalid_argument("IrrationalTarget: cannot parse '" + digits + "'");
  }
  IrrationalTarget t;
  t.token_ = digits;
  t.decimal_ = decimal_of(x);
  t.approx_ = static_cast<double>(x);
  t.convergents_ = convergents_of(x, count);
  t.cf_terms_ = terms_from(t.convergents_);
  return t;
}

IrrationalTarget IrrationalTarget::golden(int count) {
  const real50 x = (sqrt(real50(5)) - 1) / 2;
  IrrationalTarget t;
  t.token_ = "golden";
  t.decimal_ = decimal_of(x);
  t.approx_ = static_cast<double>(x);
  t.convergents_ = convergents_of(x, count);
  t.cf_terms_ = terms_from(t.convergents_);
  return t;
}

IrrationalTarget IrrationalTarget::sqrt2_minus_1(int count) {
  const real50 x = sqrt(real50(2)) - 1;
  IrrationalTarget t;
  t.token_ = "sqrt2m1";
  t.decimal_ = decimal_of(x);
  t.approx_ = static_cast<double>(x);
  t.convergents_ = convergents_of(x, count);
  t.cf_terms_ = terms_from(t.convergents_);
  return t;
}

IrrationalTarget IrrationalTarget::from_token(const std::string& token, int count) {
  if (token == "golden") return golden(count);
  if (token == "sqrt2m1") return sqrt2_minus_1(count);
  return from_decimal(token, count);
}

}  // namespace quasispec
