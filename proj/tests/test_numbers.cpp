#include <doctest.h>

#include <random>

#include "ian/ball.hpp"
#include "ian/error.hpp"
#include "ian/multi_index.hpp"
#include "ian/polynomial.hpp"
#include "oracles.hpp"

using namespace ian;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(to_string(parse_rational("-4/6")) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK(parse_decimal("-1.25") == Rational(-5, 4));
  CHECK(parse_decimal(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_decimal("1.2.3"), Error);
  CHECK(to_decimal(Rational(2, 3), 4) == "0.6667");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.13");
}

TEST_CASE("binomials and factorials agree with direct loops") {
  for (unsigned n = 0; n < 30; ++n) {
    CHECK(factorial(n) == oracle::fact(n));
    for (unsigned k = 0; k <= n; ++k) CHECK(binomial(n, k) == oracle::choose(n, k));
  }
  CHECK(floor_log2(Rational(1, 3)) == -2);
  CHECK(floor_log2(Rational(8)) == 3);
}

TEST_CASE("dyadics are canonical") {
  CHECK(Dyadic(Integer(12), 0) == Dyadic(Integer(3), 2));
  CHECK(Dyadic(Integer(0), 5) == Dyadic());
  CHECK(Dyadic(Integer(3), -1).to_rational() == Rational(3, 2));
  const Dyadic third_down = round_rational(Rational(1, 3), 20, Round::Down);
  const Dyadic third_up = round_rational(Rational(1, 3), 20, Round::Up);
  CHECK(third_down.to_rational() < Rational(1, 3));
  CHECK(third_up.to_rational() > Rational(1, 3));
  CHECK(third_up.to_rational() - third_down.to_rational() <= pow2(-21));
}

TEST_CASE("ball arithmetic contains the exact result") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 997);
  for (int k = 0; k < 500; ++k) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    const long prec = 16 + k % 64;
    const Ball A = Ball::from_rational(a, prec), B = Ball::from_rational(b, prec);
    REQUIRE(A.contains(Rational(a)));
    CHECK(add(A, B, prec).contains(Rational(a + b)));
    CHECK(sub(A, B, prec).contains(Rational(a - b)));
    CHECK(mul(A, B, prec).contains(Rational(a * b)));
    CHECK(mul(A, Rational(3, 7), prec).contains(Rational(a * 3 / 7)));
    if (b != 0 && !B.contains_zero()) {
      CHECK(recip(B, prec).contains(Rational(1 / b)));
      CHECK(div(A, B, prec).contains(Rational(a / b)));
    }
    CHECK(pow(A, 3, prec).contains(Rational(a * a * a)));
    CHECK(A.abs_upper() >= abs(a));
    CHECK(A.abs_lower() <= abs(a));
  }
}

TEST_CASE("ball reciprocal of a ball around zero is refused") {
  const Ball z = Ball::from_rational(0, 64).add_error(Rational(1, 10));
  CHECK_THROWS_AS(recip(z, 64), Error);
}

TEST_CASE("ball containment and overlap") {
  const Ball a = Ball::from_rational(1, 64).add_error(Rational(1, 4));
  const Ball b = Ball::from_rational(Rational(9, 8), 64).add_error(Rational(1, 16));
  const Ball c = Ball::from_rational(2, 64);
  CHECK(a.contains(b));
  CHECK_FALSE(b.contains(a));
  CHECK(a.overlaps(b));
  CHECK_FALSE(a.overlaps(c));
}

TEST_CASE("multi-index order is degree first") {
  CHECK(MultiIndex{0, 2} > MultiIndex{1, 0});
  CHECK(MultiIndex{2, 0} < MultiIndex{1, 1});
  MultiIndex a{1, 2, 0};
  a.set(2, 4);
  CHECK(a.degree() == 7);
  CHECK(a.erase(1) == MultiIndex{1, 4});
  CHECK(a.erase(1).insert(1, 2) == a);
  CHECK(MultiIndex{1, 0}.divides(MultiIndex{1, 3}));
  CHECK_FALSE(MultiIndex{2, 0}.divides(MultiIndex{1, 3}));
  CHECK(MultiIndex::unit(3, 1, 5) == MultiIndex{0, 5, 0});
}

TEST_CASE("monomial enumeration counts binom(N + n, n)") {
  for (int n = 1; n <= 4; ++n) {
    for (int N = 0; N <= 7; ++N) {
      int count = 0;
      MultiIndex prev(n);
      bool first = true;
      for_each_monomial(n, N, [&](const MultiIndex& alpha) {
        if (!first) CHECK(prev < alpha);
        prev = alpha;
        first = false;
        ++count;
      });
      CHECK(count == oracle::choose(static_cast<unsigned>(N + n), static_cast<unsigned>(n)));
      CHECK(static_cast<long>(monomials_of_degree(n, N).size()) ==
            oracle::choose(static_cast<unsigned>(N + n - 1), static_cast<unsigned>(n - 1)));
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial one = Polynomial::constant(2, 1);
  const Polynomial p = (x + y).pow(3);
  CHECK(p.coeff(MultiIndex{2, 1}) == 3);
  CHECK(p.degree() == 3);
  CHECK(p.degree_in(0) == 3);
  CHECK((p - p).is_zero());
  CHECK((x + one) * (x - one) == x * x - one);
  CHECK(p.derivative(1) == (x + y).pow(2).scaled(3));
  const Rational pt[2] = {Rational(1, 2), Rational(-1, 3)};
  CHECK(p.evaluate(pt) == Rational(1, 216));
  const Rational rho[2] = {Rational(1), Rational(2)};
  CHECK((x - y.scaled(2)).abs_sum(rho) == 5);
  CHECK((one + x).abs_sum(rho, true) == 1);
}
