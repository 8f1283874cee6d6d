#pragma once

#include <initializer_list>
#include <variant>

#include "ian/series.hpp"

namespace testing {

// c0 + c1 X + c2 X^2 + ... in one variable.
inline ian::Polynomial upoly(std::initializer_list<ian::Rational> cs) {
  ian::Polynomial p(1);
  std::uint32_t k = 0;
  for (const auto& c : cs) p.add_term(ian::MultiIndex{k++}, c);
  return p;
}

inline ian::Polynomial monomial(int arity, std::initializer_list<std::uint32_t> exps, const ian::Rational& c = 1) {
  ian::Polynomial p(arity);
  p.add_term(ian::MultiIndex(exps), c);
  return p;
}

inline ian::SeriesExpr geometric() { return ian::recip(ian::poly(upoly({1, -1}))); }

inline ian::Rational exact(const ian::SeriesExpr& e, std::initializer_list<std::uint32_t> alpha) {
  return std::get<ian::Rational>(ian::coeff(e, ian::MultiIndex(alpha)));
}

inline ian::Ball ball(const ian::SeriesExpr& e, std::initializer_list<std::uint32_t> alpha, const ian::Rational& tol) {
  const auto c = ian::coeff(e, ian::MultiIndex(alpha), tol);
  if (const auto* q = std::get_if<ian::Rational>(&c)) return ian::Ball::from_rational(*q, 256);
  return std::get<ian::Ball>(c);
}

}  // namespace testing
