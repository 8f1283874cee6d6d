#include <doctest.h>

#include "helpers.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "ian/eval.hpp"
#include "ian/node.hpp"
#include "ian/trunc.hpp"
#include "oracles.hpp"

using namespace ian;
using namespace testing;

TEST_CASE("point evaluation") {
  const Rational third[1] = {Rational(1, 3)};
  const Ball g = eval_at(geometric(), third, pow10(-20));
  CHECK(g.contains(Rational(3, 2)));
  CHECK(g.rad().to_rational() <= pow10(-20));

  const Rational fifth[1] = {Rational(1, 5)};
  const Ball a = eval_at(arctan_series(), fifth, pow10(-30));
  CHECK(a.rad().to_rational() <= pow10(-30));
  CHECK(oracle::encloses_decimal(a, oracle::kAtanFifth));

  const Rational zero[2] = {0, 0};
  const SeriesExpr e = add(subst_poly(geometric(), {monomial(2, {1, 0}) + monomial(2, {0, 1})}), constant(2, Rational(2, 7)));
  CHECK(eval_at(e, zero, pow10(-10)).contains(Rational(9, 7)));

  const Rational far[1] = {Rational(3, 2)};
  CHECK_THROWS_AS(eval_at(geometric(), far, pow10(-5)), Error);
}

TEST_CASE("evaluation report") {
  const Rational x[1] = {Rational(1, 4)};
  const EvalReport r = eval_at_report(log_series(), x, pow10(-40));
  CHECK(r.order > 8);
  CHECK(r.prec >= 64);
  CHECK(r.tail <= pow10(-40));
  CHECK(r.value.rad().to_rational() <= pow10(-40));
}

TEST_CASE("bivariate evaluation against a closed form") {
  // 1/(1 - X1 - X2) at (1/5, 1/7)
  const SeriesExpr e = subst_poly(geometric(), {monomial(2, {1, 0}) + monomial(2, {0, 1})});
  const Rational x[2] = {Rational(1, 5), Rational(1, 7)};
  const Ball b = eval_at(e, x, pow10(-25));
  CHECK(b.contains(Rational(35, 23)));
}

TEST_CASE("coefficients of the re-expansion") {
  const Rational a[1] = {Rational(1, 2)};
  for (std::uint32_t p = 0; p <= 8; ++p) {
    const Ball b = translate_coeff(geometric(), a, MultiIndex{p}, pow10(-25));
    CHECK(b.contains(pow2(p + 1)));
  }
  const Ball l1 = translate_coeff(log_series(), a, MultiIndex{1}, pow10(-25));
  CHECK(l1.contains(Rational(2, 3)));
  const Ball l0 = translate_coeff(log_series(), a, MultiIndex{0}, pow10(-25));
  CHECK(l0.overlaps(eval_at(log_series(), a, pow10(-25))));
}

TEST_CASE("enclosure contains a longer partial sum") {
  const SeriesExpr e = mul(log_series(), recip(poly(upoly({2, 1, 1}))));
  const Rational x[1] = {Rational(-2, 5)};
  const EvalReport r = eval_at_report(e, x, pow2(-60));
  const int N = 4 * r.order;
  const BallField f{4 * r.prec};
  const Ball brute = kernels::partial_sum(f, *ball_trunc(e, 4 * r.prec, N), x, N);
  CHECK(r.value.contains(brute));
}
