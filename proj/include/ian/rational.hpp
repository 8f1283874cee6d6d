#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ian {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q > 0). Throws Error(InvalidArgument) on anything else.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& base, unsigned exponent);

Integer binomial(unsigned n, unsigned k);
Integer factorial(unsigned n);

/// floor(log2(q)) for q > 0.
long floor_log2(const Rational& q);

/// Rounds q to the nearest multiple of 10^-digits and prints it in positional
/// notation with exactly `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits);

/// Upper bound of |q| printed as "d.de-k" (two significant digits, rounded up).
std::string to_sci_upper(const Rational& q);

/// Parses a plain decimal literal such as "-3.14159" exactly.
Rational parse_decimal(std::string_view text);

inline Rational pow2(long k) {
  Rational r(1);
  if (k >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(k));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-k));
  }
  return r;
}

inline Rational pow10(long k) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  return k >= 0 ? Rational(p) : Rational(Integer(1), p);
}

}  // namespace ian
