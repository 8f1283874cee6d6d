#include <doctest.h>

#include "helpers.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "oracles.hpp"

using namespace ian;
using namespace testing;

TEST_CASE("pi") {
  const ConstantResult p10 = machin_pi(10);
  CHECK(oracle::encloses_decimal(p10.ball, oracle::kPi));
  const ConstantResult p50 = machin_pi(50);
  CHECK(p50.ball.rad().to_rational() <= pow10(-50) / 2);
  CHECK(oracle::encloses_decimal(p50.ball, oracle::kPi));
  CHECK(p50.derivation_hash.size() == 16);
  // pi / 4 = atan(1/2) + atan(1/3)
  const Ball other = mul(add(arctan_rational(Rational(1, 2), 40).ball, arctan_rational(Rational(1, 3), 40).ball, 256),
                         Rational(4), 256);
  CHECK(other.overlaps(p50.ball));
}

TEST_CASE("logarithms") {
  const ConstantResult h = log_rational(Rational(1, 2), 30);
  CHECK(oracle::encloses_decimal(-h.ball, oracle::kLog2));
  CHECK(log_rational(1, 30).ball.is_zero());
  CHECK(oracle::encloses_decimal(log_rational(Rational(3, 2), 30).ball, oracle::kLog3Over2));
  CHECK(oracle::encloses_decimal(constant_by_name("log2", 40).ball, oracle::kLog2));
  CHECK_THROWS_AS(log_rational(0, 10), Error);
  CHECK_THROWS_AS(log_rational(-3, 10), Error);
}

TEST_CASE("arcsine, dilogarithm, e and sine") {
  const ConstantResult a = arcsin_half(20);
  CHECK(oracle::encloses_decimal(a.ball, oracle::kPiOver6));
  const ConstantResult d = dilog_half(20);
  CHECK(oracle::encloses_decimal(d.ball, oracle::kDilogHalf));
  const ConstantResult e = euler_e(30);
  CHECK(e.ball.rad().to_rational() <= pow10(-30) / 2);
  CHECK(oracle::encloses_decimal(e.ball, oracle::kE));
  const ConstantResult s = sine_at(Rational(1, 2), 20);
  CHECK(oracle::encloses_decimal(s.ball, oracle::kSinHalf));
  CHECK(sine_at(0, 20).ball.is_zero());
  CHECK(sine_at(Rational(-1, 2), 20).ball == -s.ball);
}

TEST_CASE("log is increasing across the enclosure of e") {
  const ConstantResult e = euler_e(20);
  const Rational below = e.ball.lower() - pow10(-15), above = e.ball.upper() + pow10(-15);
  CHECK(log_rational(below, 20).ball.upper() < 1);
  CHECK(log_rational(above, 20).ball.lower() > 1);
}

TEST_CASE("series coefficients behind the constants") {
  for (std::uint32_t p = 0; p <= 8; ++p) {
    const Rational c = oracle::frac(oracle::fact(2 * p), oracle::fact(p) * oracle::fact(p) * (mpz_class(1) << (2 * p)) * (2 * p + 1));
    CHECK(exact(arcsin_series(), {2 * p + 1}) == c);
  }
  const Rational tol = pow10(-30);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(ball(dilog_series(), {p + 1}, tol).contains(Rational(1, (p + 1) * (p + 1))));
}

TEST_CASE("registry") {
  CHECK_THROWS_AS(constant_by_name("tau", 10), Error);
  CHECK_THROWS_AS(machin_pi(0), Error);
  CHECK(constant_by_name("pi", 20).derivation_hash == machin_pi(30).derivation_hash);
  CHECK(constant_by_name("pi", 20).derivation_hash != constant_by_name("e", 20).derivation_hash);
  CHECK(series_program("G") == "(recip (poly 1 (1 0) (-1 1)))");
}
