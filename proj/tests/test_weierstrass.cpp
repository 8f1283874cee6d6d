#include <doctest.h>

#include "helpers.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "ian/node.hpp"
#include "ian/weierstrass.hpp"
#include "oracles.hpp"

using namespace ian;
using namespace testing;

namespace {

Rational at(const Trunc<Rational>& t, const MultiIndex& alpha) {
  const Rational* c = t.find(alpha);
  return c ? *c : Rational(0);
}

Polynomial x1() { return Polynomial::variable(2, 0); }
Polynomial x2() { return Polynomial::variable(2, 1); }

}  // namespace

TEST_CASE("regularity order") {
  CHECK(regular_order(truncate(poly(x2() * x2() + x1() * x2() + x1()), 6)).d == 2);
  const auto unit = regular_order(truncate(poly(Polynomial::constant(2, 1) + x1()), 6));
  CHECK(unit.regular);
  CHECK(unit.d == 0);
  CHECK_FALSE(regular_order(truncate(poly(x1() * x2()), 10)).regular);
}

TEST_CASE("division examples") {
  const Window w{4, 6};
  const DivisionResult r = wdiv(poly(x2() * x2() - x1()), poly(x2() * x2() * x2()), 2, w);
  for_each_monomial(2, 10, [&](const MultiIndex& alpha) {
    if (!w.contains(alpha)) return;
    CHECK(at(r.h, alpha) == (alpha == MultiIndex{0, 1} ? 1 : 0));
    CHECK(at(r.remainder, alpha) == (alpha == MultiIndex{1, 1} ? 1 : 0));
  });
  REQUIRE(r.r.size() == 2);
  CHECK(at(r.r[1], MultiIndex{1}) == 1);

  const DivisionResult u = wdiv(poly(Polynomial::constant(2, 2) + x1()), poly(x2()), 0, w);
  CHECK(u.remainder.terms.empty());
  CHECK(at(u.h, MultiIndex{0, 1}) == Rational(1, 2));
  CHECK(at(u.h, MultiIndex{1, 1}) == Rational(-1, 4));

  const DivisionResult one = wdiv(poly(upoly({0, 0, 1})), poly(upoly({1, 0, 0, 1})), 2, Window{0, 8});
  CHECK(at(one.h, MultiIndex{1}) == 1);
  CHECK(at(one.remainder, MultiIndex{0}) == 1);
  CHECK(one.remainder.terms.size() == 1);

  CHECK_THROWS_AS(wdiv(poly(x1() * x2()), poly(x2()), 1, w), Error);
}

TEST_CASE("preparation examples") {
  const Window w{4, 6};
  const Polynomial wp = x2() * x2() + x1() * x2() + x1();
  const PreparationResult a = wprep(poly(wp), 2, w);
  for_each_monomial(2, 10, [&](const MultiIndex& alpha) {
    if (!w.contains(alpha)) return;
    CHECK(at(a.P, alpha) == wp.coeff(alpha));
    CHECK(at(a.u, alpha) == (alpha.degree() == 0 ? 1 : 0));
  });

  const Polynomial unit = Polynomial::constant(2, 1) + x1();
  const PreparationResult b = wprep(poly(unit * (x2() * x2() - x1())), 2, w);
  for_each_monomial(2, 10, [&](const MultiIndex& alpha) {
    if (!w.contains(alpha)) return;
    CHECK(at(b.P, alpha) == (x2() * x2() - x1()).coeff(alpha));
    CHECK(at(b.u, alpha) == unit.coeff(alpha));
  });

  const PreparationResult c = wprep(poly(x2() * (Polynomial::constant(2, 1) + x2())), 1, w);
  CHECK(at(c.P, MultiIndex{0, 1}) == 1);
  CHECK(at(c.u, MultiIndex{0, 1}) == 1);
  CHECK(at(c.u, MultiIndex{0, 0}) == 1);
}

TEST_CASE("composition") {
  const SeriesExpr g = geometric();
  // G(1 - 1/(1+X)) = (1 + X), the substituted series being X/(1+X)
  const SeriesExpr inner = sub(constant(1, 1), recip(poly(upoly({1, 1}))));
  const SeriesExpr c = compose_series(g, {inner});
  oracle::Dense in(13, 0), outer(13, 1);
  for (int p = 1; p <= 12; ++p) in[p] = p % 2 ? 1 : -1;
  const auto brute = oracle::compose(outer, in, 12);
  for (std::uint32_t p = 0; p <= 12; ++p) CHECK(exact(c, {p}) == brute[p]);

  const SeriesExpr id = compose_series(log_series(), {poly(upoly({0, 1}))});
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(exact(id, {p}) == exact(log_series(), {p}));

  const SeriesExpr x = compose_series(log_series(), {exp_minus_one()});
  for (std::uint32_t p = 0; p <= 14; ++p) CHECK(exact(x, {p}) == (p == 1 ? 1 : 0));

  CHECK_THROWS_AS(compose_series(g, {g}), Error);
}

TEST_CASE("compositional inverses") {
  const SeriesExpr e = inverse_series(log_series());
  for (std::uint32_t p = 1; p <= 12; ++p) CHECK(exact(e, {p}) == Rational(1, oracle::fact(p)));
  const SeriesExpr x = inverse_series(poly(upoly({0, 1})));
  CHECK(exact(x, {1}) == 1);
  CHECK(exact(x, {2}) == 0);
  const SeriesExpr s = inverse_series(arcsin_series());
  CHECK(exact(s, {3}) == Rational(-1, 6));
  CHECK(exact(s, {5}) == Rational(1, 120));
  CHECK_THROWS_AS(inverse_series(poly(upoly({0, 0, 1}))), Error);
  CHECK_THROWS_AS(inverse_series(geometric()), Error);
}

TEST_CASE("implicit functions") {
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const auto lin = implicit_series({poly(y - x.scaled(2))});
  CHECK(exact(lin[0], {1}) == 2);
  CHECK(exact(lin[0], {2}) == 0);

  const auto cat = implicit_series({poly(y - x - y * y)});
  for (std::uint32_t p = 0; p <= 12; ++p) {
    const mpz_class catalan = oracle::choose(2 * p, p) / (p + 1);
    CHECK(exact(cat[0], {p + 1}) == catalan);
  }

  const auto cub = implicit_series({poly(y * y * y + y - x)});
  CHECK(exact(cub[0], {1}) == 1);
  CHECK(exact(cub[0], {2}) == 0);
  CHECK(exact(cub[0], {3}) == -1);

  CHECK_THROWS_AS(implicit_series({poly(y * y - x)}), Error);
  CHECK_THROWS_AS(implicit_series({poly(y - x + Polynomial::constant(2, 1))}), Error);
}

TEST_CASE("complexification") {
  const auto [re, im] = complexify(poly(upoly({0, 0, 1})));
  CHECK(exact(re, {2, 0}) == 1);
  CHECK(exact(re, {0, 2}) == -1);
  CHECK(exact(im, {1, 1}) == 2);
  CHECK(exact(im, {2, 0}) == 0);

  const auto [gre, gim] = complexify(geometric());
  const SeriesExpr back = restrict0(gre, 1);
  for (std::uint32_t p = 0; p <= 10; ++p) CHECK(exact(back, {p}) == 1);
  // sum_p (x + i y)^p: the x^2 y^2 term comes from p = 4 with binom(4, 2) i^2
  CHECK(exact(gre, {2, 2}) == -6);
  CHECK(exact(gim, {1, 3}) == -4);
  CHECK(exact(gim, {3, 1}) == 4);
}
