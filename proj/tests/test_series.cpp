#include <doctest.h>

#include "helpers.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "oracles.hpp"

using namespace ian;
using namespace testing;

TEST_CASE("reciprocals of linear and quadratic polynomials") {
  const SeriesExpr g = geometric();
  const SeriesExpr h = recip(poly(upoly({1, 1})));
  for (std::uint32_t p = 0; p <= 30; ++p) {
    CHECK(exact(g, {p}) == 1);
    CHECK(exact(h, {p}) == (p % 2 ? -1 : 1));
  }
  // Fibonacci by direct recurrence
  const SeriesExpr fib = recip(poly(upoly({1, -1, -1})));
  mpz_class a = 1, b = 1;
  for (std::uint32_t p = 0; p <= 25; ++p) {
    CHECK(exact(fib, {p}) == a);
    mpz_class c = a + b;
    a = b;
    b = c;
  }
  CHECK_THROWS_AS(recip(poly(upoly({0, 1}))), Error);
}

TEST_CASE("truncations of products") {
  const SeriesExpr g = geometric();
  const auto one = truncate(mul(g, poly(upoly({1, -1}))), 5);
  for (const auto& [alpha, c] : one.coeffs) CHECK(std::get<Rational>(c) == (alpha.degree() == 0 ? 1 : 0));
  const auto sq = truncate(mul(g, g), 4);
  for (const auto& [alpha, c] : sq.coeffs) CHECK(std::get<Rational>(c) == alpha.degree() + 1);
  const auto xy = truncate(poly(monomial(2, {1, 1})), 1);
  CHECK(xy.coeffs.size() == 3);
  for (const auto& [alpha, c] : xy.coeffs) CHECK(std::get<Rational>(c) == 0);
}

TEST_CASE("polynomial substitution") {
  const SeriesExpr g = geometric();
  const SeriesExpr g2 = subst_poly(g, {monomial(2, {1, 0}) + monomial(2, {0, 1})});
  for (std::uint32_t p = 0; p <= 10; ++p) {
    for (std::uint32_t q = 0; p + q <= 10; ++q) CHECK(exact(g2, {p, q}) == oracle::choose(p + q, p));
  }
  const SeriesExpr g2x = subst_poly(g, {upoly({0, 2})});
  for (std::uint32_t p = 0; p <= 20; ++p) CHECK(exact(g2x, {p}) == pow2(p));
  const SeriesExpr gxt = subst_poly(g, {monomial(2, {1, 1})});
  for (std::uint32_t p = 0; p <= 8; ++p) {
    for (std::uint32_t q = 0; q <= 8; ++q) CHECK(exact(gxt, {p, q}) == (p == q ? 1 : 0));
  }
  CHECK_THROWS_AS(subst_poly(g, {upoly({1, 1})}), Error);
  CHECK_THROWS_AS(subst_poly(g, {upoly({0, 1}), upoly({0, 1})}), Error);
}

TEST_CASE("translation re-expands with certified coefficients") {
  const SeriesExpr g = geometric();
  const SeriesExpr gh = translate(g, {Rational(1, 2)});
  CHECK_FALSE(gh.is_exact());
  const Rational tol = pow10(-30);
  for (std::uint32_t p = 0; p <= 16; ++p) {
    const Ball b = ball(gh, {p}, tol);
    CHECK(b.contains(pow2(p + 1)));
    CHECK(b.rad().to_rational() <= tol);
  }
  const SeriesExpr g0 = translate(g, {Rational(0)});
  for (std::uint32_t p = 0; p <= 5; ++p) CHECK(ball(g0, {p}, tol).contains(Rational(1)));
  const Ball l0 = ball(translate(log_series(), {Rational(1, 2)}), {0}, tol);
  CHECK(oracle::encloses_decimal(l0, oracle::kLog3Over2));
  CHECK_THROWS_AS(translate(g, {Rational(2)}), Error);
}

TEST_CASE("antiderivatives") {
  const SeriesExpr ig = antider(geometric(), 0);
  CHECK(exact(ig, {0}) == 0);
  for (std::uint32_t p = 0; p <= 20; ++p) CHECK(exact(ig, {p + 1}) == Rational(1, p + 1));
  const SeriesExpr l = antider(recip(poly(upoly({1, 1}))), 0);
  for (std::uint32_t p = 1; p <= 20; ++p) CHECK(exact(l, {p}) == Rational(p % 2 ? 1 : -1, p));
  const SeriesExpr at = antider(recip(poly(upoly({1, 0, 1}))), 0);
  for (std::uint32_t p = 0; p <= 10; ++p) {
    CHECK(exact(at, {2 * p + 1}) == Rational(p % 2 ? -1 : 1, 2 * p + 1));
    CHECK(exact(at, {2 * p}) == 0);
  }
}

TEST_CASE("derivatives and restrictions") {
  const SeriesExpr g = geometric();
  const SeriesExpr back = deriv(antider(g, 0), 0);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(exact(back, {p}) == 1);
  const SeriesExpr dg = deriv(g, 0);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(exact(dg, {p}) == p + 1);
  CHECK(exact(deriv(constant(1, 5), 0), {0}) == 0);

  const SeriesExpr f = subst_poly(g, {monomial(2, {1, 0}) + monomial(2, {0, 2}, 3)});
  const SeriesExpr z = restrict0(antider(f, 1), 1);
  for (std::uint32_t p = 0; p <= 8; ++p) CHECK(exact(z, {p}) == 0);
  const SeriesExpr g2 = subst_poly(g, {monomial(2, {1, 0}) + monomial(2, {0, 1})});
  const SeriesExpr r = restrict0(g2, 1);
  for (std::uint32_t p = 0; p <= 8; ++p) CHECK(exact(r, {p}) == 1);
  const SeriesExpr q = restrict0(poly(monomial(2, {1, 0}) + monomial(2, {0, 2}, 3)), 1);
  CHECK(exact(q, {1}) == 1);
  CHECK(exact(q, {2}) == 0);
}

TEST_CASE("permutations") {
  const SeriesExpr p = poly(monomial(2, {1, 0}) + monomial(2, {0, 1}, 2));
  const SeriesExpr s = permute(p, {1, 0});
  CHECK(exact(s, {0, 1}) == 1);
  CHECK(exact(s, {1, 0}) == 2);
  const SeriesExpr id = permute(p, {0, 1});
  CHECK(exact(id, {1, 0}) == 1);
  const SeriesExpr t = poly(monomial(3, {1, 2, 3}));
  const SeriesExpr twice = permute(permute(t, {1, 0, 2}), {0, 2, 1});
  const SeriesExpr direct = permute(t, {1, 2, 0});
  for_each_monomial(3, 6, [&](const MultiIndex& alpha) {
    CHECK(std::get<Rational>(coeff(twice, alpha)) == std::get<Rational>(coeff(direct, alpha)));
  });
  CHECK_THROWS_AS(permute(t, {0, 0, 1}), Error);
}

TEST_CASE("integration over the last variable") {
  const SeriesExpr g = geometric();
  const SeriesExpr s = integrate_last(subst_poly(g, {monomial(2, {1, 1})}), 1);
  const Rational tol = pow10(-30);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(ball(s, {p}, tol).contains(Rational(1, p + 1)));
  const SeriesExpr l2 = integrate_last(g, Rational(1, 2));
  CHECK(l2.arity() == 0);
  const auto c = coeff(l2, MultiIndex(0), tol);
  CHECK(oracle::encloses_decimal(std::get<Ball>(c), oracle::kLog2));
  const SeriesExpr a = integrate_last(constant(1, 1), Rational(3, 7));
  CHECK(ball(a, {}, tol).contains(Rational(3, 7)));
}

TEST_CASE("ring laws against brute force") {
  const SeriesExpr a = recip(poly(monomial(2, {0, 0}, 2) + monomial(2, {1, 0}) - monomial(2, {1, 1})));
  const SeriesExpr b = antider(subst_poly(geometric(), {monomial(2, {0, 1}) + monomial(2, {1, 0}, Rational(1, 3))}), 0);
  const int N = 12;
  const auto ta = truncate(a, N), tb = truncate(b, N), ts = truncate(add(a, b), N), tm = truncate(mul(a, b), N);
  for_each_monomial(2, N, [&](const MultiIndex& alpha) {
    const Rational x = std::get<Rational>(ta.at(alpha)), y = std::get<Rational>(tb.at(alpha));
    CHECK(std::get<Rational>(ts.at(alpha)) == x + y);
    Rational prod = 0;
    for_each_monomial(2, static_cast<int>(alpha.degree()), [&](const MultiIndex& beta) {
      if (beta.divides(alpha)) prod += std::get<Rational>(ta.at(beta)) * std::get<Rational>(tb.at(alpha - beta));
    });
    CHECK(std::get<Rational>(tm.at(alpha)) == prod);
  });
}

TEST_CASE("arity mismatches are rejected") {
  CHECK_THROWS_AS(add(geometric(), poly(monomial(2, {1, 0}))), Error);
  CHECK_THROWS_AS(antider(geometric(), 1), Error);
}
