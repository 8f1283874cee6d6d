#include <doctest.h>

#include "helpers.hpp"
#include "ian/algebraic.hpp"
#include "ian/error.hpp"
#include "oracles.hpp"

using namespace ian;
using namespace testing;

namespace {

// P(X, Y) from rows: rows[j] holds the X-coefficients of Y^j.
Polynomial rows(std::initializer_list<std::initializer_list<int>> rs) {
  Polynomial P(2);
  std::uint32_t j = 0;
  for (const auto& row : rs) {
    std::uint32_t i = 0;
    for (int c : row) P.add_term(MultiIndex{i++, j}, c);
    ++j;
  }
  return P;
}

}  // namespace

TEST_CASE("algebraic leaves") {
  const auto g = make_algebraic_def(rows({{-1}, {1, -1}}), 1);
  const auto coeffs = lift_algebraic(g, 20);
  for (const auto& c : coeffs) CHECK(c == 1);

  const auto s = make_algebraic_def(rows({{-1}, {0}, {1, 0, -1}}), 1);
  const SeriesExpr se = algebraic_series(s);
  CHECK(exact(se, {2}) == Rational(1, 2));
  // (1 - X^2)^(-1/2) = sum binom(2p, p) / 4^p X^(2p)
  for (std::uint32_t p = 0; p <= 8; ++p) {
    CHECK(exact(se, {2 * p}) == oracle::frac(oracle::choose(2 * p, p), mpz_class(1) << (2 * p)));
    CHECK(exact(se, {2 * p + 1}) == 0);
  }

  const auto r = make_algebraic_def(rows({{-1, -1}, {0}, {1}}), 1);
  const auto rc = lift_algebraic(r, 12);
  // binomial series for (1 + X)^(1/2) by the ratio c_(p+1) = c_p (1/2 - p) / (p + 1)
  Rational c = 1;
  for (int p = 0; p <= 12; ++p) {
    CHECK(rc[static_cast<size_t>(p)] == c);
    c = c * (Rational(1, 2) - p) / (p + 1);
  }
  CHECK(rc[3] == Rational(1, 16));
}

TEST_CASE("defining equation residual vanishes") {
  const auto def = make_algebraic_def(rows({{-1}, {0, 1}, {0}, {1}}), 1);  // Y^3 + X Y - 1
  const int N = 16;
  const auto y = lift_algebraic(def, N);
  const oracle::Dense yd(y.begin(), y.end());
  const auto y2 = oracle::cauchy(yd, yd, N), y3 = oracle::cauchy(y2, yd, N);
  const auto xy = oracle::cauchy(oracle::Dense{0, 1}, yd, N);
  for (int p = 0; p <= N; ++p) CHECK(y3[p] + xy[p] - (p == 0 ? 1 : 0) == 0);
}

TEST_CASE("invalid algebraic definitions") {
  CHECK_THROWS_AS(make_algebraic_def(rows({{-1}, {1}}), 2), Error);
  CHECK_THROWS_AS(make_algebraic_def(rows({{0}, {0}, {1}}), 0), Error);
  try {
    make_algebraic_def(rows({{-4}, {0}, {1}}), 3);
    FAIL("accepted an inconsistent root");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentDefinition);
  }
  try {
    make_algebraic_def(rows({{0, 0, 1}, {0, -2}, {1}}), 0);  // (Y - X)^2
    FAIL("accepted a double root");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::NotSimpleRoot || e.kind() == ErrorKind::DegenerateDiscriminant));
  }
}

TEST_CASE("radius bounds") {
  const auto g = make_algebraic_def(rows({{-1}, {1, -1}}), 1);
  const RadiusBound rg = radius_bound(g);
  CHECK(rg.r <= Rational(1, 2));
  CHECK(rg.r > 0);
  for (int p = 0; p <= 40; ++p) CHECK(1 <= rg.M / pow(rg.r, static_cast<unsigned>(p)));

  const auto lin = make_algebraic_def(rows({{0, 1, 3}, {1}}), 0);  // Y = -X - 3X^2
  CHECK(radius_bound(lin).r == 2);

  const auto sq = make_algebraic_def(rows({{-1, -1}, {0}, {1}}), 1);
  const RadiusBound rs = radius_bound(sq);
  CHECK(rs.r <= Rational(1, 2));
  const auto c = lift_algebraic(sq, 30);
  for (int p = 0; p <= 30; ++p) CHECK(abs(c[static_cast<size_t>(p)]) <= rs.M / pow(rs.r, static_cast<unsigned>(p)));
}

TEST_CASE("real root isolation") {
  const auto two = isolate_real_roots(upoly({-2, 0, 1}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].hi <= 0);
  CHECK(two[1].lo >= 0);
  CHECK(isolate_real_roots(upoly({1, 0, 1})).empty());
  const auto three = isolate_real_roots(upoly({-6, 11, -6, 1}));
  REQUIRE(three.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(three[static_cast<size_t>(k)].lo <= k + 1);
    CHECK(three[static_cast<size_t>(k)].hi >= k + 1);
  }
  CHECK(sturm_count(upoly({-6, 11, -6, 1}), 0, Rational(5, 2)) == 2);
  CHECK(sturm_count(upoly({-6, 11, -6, 1}), 1, 3) == 2);
  // a repeated root counts once
  CHECK(isolate_real_roots(upoly({1, -2, 1})).size() == 1);
  CHECK_THROWS_AS(isolate_real_roots(Polynomial(1)), Error);
}

TEST_CASE("root refinement") {
  const Ball half = refine_root(upoly({-1, 2}), {0, 1}, Rational(1, 1000));
  CHECK(half.is_exact());
  CHECK(half.contains(Rational(1, 2)));
  const Ball s = refine_root(upoly({-2, 0, 1}), {1, 2}, pow10(-10));
  CHECK(s.rad().to_rational() <= pow10(-10));
  CHECK(oracle::encloses_decimal(s, oracle::kSqrt2));
  const Ball c = refine_root(upoly({-2, 0, 0, 1}), {1, 2}, pow10(-8));
  CHECK(oracle::encloses_decimal(c, oracle::kCbrt2));
  CHECK_THROWS_AS(refine_root(upoly({-6, 11, -6, 1}), {0, 4}, pow10(-5)), Error);
}
