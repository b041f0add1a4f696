// Coprime rational frequencies and continued-fraction convergents.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quasispec {

// Reduced fraction p/q with q >= 1. Always stored coprime.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);  // reduces; throws if den == 0

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }

  // frac(n * p/q) in [0,1), computed in exact integer arithmetic.
  // Bitwise q-periodic in n by construction.
  double orbit_fraction(std::int64_t n) const;

  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// An irrational frequency held to ~50 decimal digits, together with its
// continued-fraction expansion [0; a1, a2, ...] and convergents p_k/q_k.
class IrrationalTarget {
 public:
  // token: "golden" ((sqrt 5 - 1)/2), "sqrt2m1" (sqrt 2 - 1), or a decimal
  // string like "0.57735026918962576450914878050195745564760175127013".
  static IrrationalTarget from_token(const std::string& token, int convergent_count);
  static IrrationalTarget golden(int convergent_count);
  static IrrationalTarget sqrt2_minus_1(int convergent_count);
  static IrrationalTarget from_decimal(const std::string& digits, int convergent_count);

  double value() const { return approx_; }
  const std::string& decimal() const { return decimal_; }
  const std::string& token() const { return token_; }
  const std::vector<std::int64_t>& cf_terms() const { return cf_terms_; }
  const std::vector<Rational>& convergents() const { return convergents_; }

 private:
  IrrationalTarget() = default;
  std::string token_;
  std::string decimal_;
  double approx_ = 0;
  std::vector<std::int64_t> cf_terms_;
  std::vector<Rational> convergents_;
};

// First `count` convergents of alpha given as a decimal string in (0,1).
// convergents(...)[0] is 0/1 (the 0th convergent). Throws std::runtime_error
// if alpha is rational within working precision (~1e-40), with a hint to use
// Rational directly; std::invalid_argument on bad input or count < 1.
std::vector<Rational> convergents(const std::string& decimal_alpha, int count);

}  // namespace quasispec
