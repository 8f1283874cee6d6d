#pragma once

// Reference values for the tests. Decimal constants were produced by mpmath
// at 70 digits; the helpers below compute coefficients by direct loops that
// share no code with the library.

#include <map>
#include <string>
#include <vector>

#include "ian/ball.hpp"
#include "ian/rational.hpp"

namespace oracle {

inline const char* const kPi = "3.1415926535897932384626433832795028841971693993751058209749446";
inline const char* const kLog2 = "0.69314718055994530941723212145817656807550013436025525412068001";
inline const char* const kLog3Over2 = "0.40546510810816438197801311546434913657199042346249419761401432";
inline const char* const kAtanFifth = "0.19739555984988075837004976519479029344758510378785210151768894";
inline const char* const kPiOver6 = "0.52359877559829887307710723054658381403286156656251763682915743";
inline const char* const kDilogHalf = "0.58224052646501250590265632015968010874419847480612642543434705";
inline const char* const kE = "2.7182818284590452353602874713526624977572470936999595749669676";
inline const char* const kSinHalf = "0.47942553860420300027328793521557138808180336794060067518861661";
inline const char* const kSqrt2 = "1.4142135623730950488016887242096980785696718753769480731766797";
inline const char* const kCbrt2 = "1.2599210498948731647672106072782283505702514647015079800819751";

// The oracle decimal d is within 10^-(fractional digits) of the true value,
// so a sound ball must meet [d - u, d + u].
inline bool encloses_decimal(const ian::Ball& b, const std::string& d) {
  using ian::Rational;
  const auto dot = d.find('.');
  const long frac = dot == std::string::npos ? 0 : static_cast<long>(d.size() - dot - 1);
  mpz_class digits(d.substr(0, dot) + (dot == std::string::npos ? "" : d.substr(dot + 1)), 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(frac));
  Rational v(digits, scale);
  v.canonicalize();
  Rational u(1, scale);
  return b.lower() <= v + u && v - u <= b.upper();
}

inline ian::Rational frac(const mpz_class& num, const mpz_class& den) {
  ian::Rational q(num, den);
  q.canonicalize();
  return q;
}

inline mpz_class choose(unsigned n, unsigned k) {
  // Pascal's rule, no library helpers
  std::vector<mpz_class> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  }
  return row[k];
}

inline mpz_class fact(unsigned n) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Univariate truncated series as dense coefficient vectors.
using Dense = std::vector<ian::Rational>;

inline Dense cauchy(const Dense& a, const Dense& b, size_t N) {
  Dense c(N + 1, 0);
  for (size_t i = 0; i < a.size() && i <= N; ++i) {
    for (size_t j = 0; j < b.size() && i + j <= N; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// a(b(X)) by Horner's rule on truncated vectors; b[0] must be 0.
inline Dense compose(const Dense& a, const Dense& b, size_t N) {
  Dense r(N + 1, 0);
  for (size_t k = a.size(); k-- > 0;) {
    r = cauchy(r, b, N);
    r[0] += a[k];
  }
  return r;
}

}  // namespace oracle
