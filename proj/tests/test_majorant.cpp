#include <doctest.h>

#include "helpers.hpp"
#include "ian/constants.hpp"
#include "ian/error.hpp"
#include "ian/majorant.hpp"
#include "ian/random_dag.hpp"

using namespace ian;
using namespace testing;

TEST_CASE("hand-made majorants of the geometric series") {
  const SeriesExpr g = geometric();
  CHECK(validate_majorant(g, Majorant{2, {Rational(1, 2)}}, 64).ok);
  const MajorantCheck bad = validate_majorant(g, Majorant{1, {Rational(2)}}, 4);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == MultiIndex{1});
  CHECK(validate_majorant(constant(2, 0), Majorant{Rational(1, 100), {Rational(9), Rational(9)}}, 12).ok);
}

TEST_CASE("closed-form rules") {
  const Majorant m{2, {Rational(1, 2)}};
  const Majorant s = add_rule(m, m);
  CHECK(s.M == 4);
  CHECK(s.radii[0] == Rational(1, 2));
  const Rational a[1] = {Rational(1, 4)};
  const Majorant t = translate_rule(m, a);
  CHECK(t.M == 4);
  CHECK(t.radii[0] == Rational(1, 4));
}

TEST_CASE("tail bounds") {
  const Majorant m{2, {Rational(1, 2)}};
  for (int N = 0; N <= 20; ++N) {
    const Rational x[1] = {Rational(1, 4)};
    const Rational b = tail_bound(m, x, N);
    // the exact tail sum_{p > N} 4^-p is below 2^(1-N)
    Rational tail = Rational(1, 3) * pow(Rational(1, 4), static_cast<unsigned>(N));
    CHECK(b >= tail);
    CHECK(b <= pow2(1 - N));
  }
  const Rational zero[1] = {Rational(0)};
  CHECK(tail_bound(m, zero, 3) == 0);
  const Majorant m2{1, {Rational(1), Rational(1)}};
  const Rational half[2] = {Rational(1, 2), Rational(1, 2)};
  CHECK(tail_bound(m2, half, 10) <= Rational(11 * 4, 2048));
  const Rational outside[1] = {Rational(1, 2)};
  CHECK_THROWS_AS(tail_bound(m, outside, 3), Error);
  // non-increasing once past the peak
  const Rational x2[2] = {Rational(1, 3), Rational(1, 4)};
  Rational prev = tail_bound(m2, x2, 2);
  for (int N = 3; N < 40; ++N) {
    const Rational b = tail_bound(m2, x2, N);
    CHECK(b <= prev);
    prev = b;
  }
}

TEST_CASE("certified majorants of the standard series") {
  for (const SeriesExpr& e : {geometric_series(), arctan_series(), log_series(), arcsin_series(), exp_minus_one()}) {
    const Majorant m = majorant_of(e);
    CHECK(m.radii[0] > 0);
    CHECK(validate_majorant(e, m, 32).ok);
  }
  const Majorant d = majorant_of(dilog_series());
  CHECK(validate_majorant(dilog_series(), d, 24).ok);
  CHECK(majorant_of(arcsin_series()).radii[0] > Rational(1, 2));
}

TEST_CASE("translated radii shrink by the offset") {
  const SeriesExpr g = geometric();
  const Majorant m = majorant_of(g);
  const Rational a = m.radii[0] / 3;
  const Majorant t = majorant_of(translate(g, {a}));
  CHECK(t.radii[0] == m.radii[0] - a);
}

TEST_CASE("random expressions respect their majorants") {
  DagGenerator gen(2024, DagOptions{4, 2, true, true});
  for (int k = 0; k < 40; ++k) {
    const SeriesExpr e = gen.expr(gen.uniform(1, 2));
    CHECK(validate_majorant(e, majorant_of(e), 16).ok);
  }
}
