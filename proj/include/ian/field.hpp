#pragma once

#include "ian/ball.hpp"
#include "ian/error.hpp"
#include "ian/rational.hpp"

namespace ian {

// Coefficient arithmetic used by the series kernels. ExactField works in Q,
// BallField in ball arithmetic at a fixed working precision. Kernels are
// written once against this interface.

struct ExactField {
  using value_type = Rational;
  static constexpr bool is_exact = true;

  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational from(const Rational& q) const { return q; }
  bool is_zero(const Rational& x) const { return sgn(x) == 0; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational scale(const Rational& a, const Rational& q) const { return a * q; }
  Rational inv(const Rational& a) const {
    if (sgn(a) == 0) throw Error(ErrorKind::NonUnitReciprocal, "reciprocal of zero");
    return 1 / a;
  }
  /// Lower bound on |a|, used to certify units.
  Rational abs_lower(const Rational& a) const { return ian::abs(a); }
  Rational abs_upper(const Rational& a) const { return ian::abs(a); }
};

struct BallField {
  using value_type = Ball;
  static constexpr bool is_exact = false;

  long prec = 64;

  Ball zero() const { return Ball(); }
  Ball one() const { return Ball(Dyadic(1), Dyadic()); }
  Ball from(const Rational& q) const { return Ball::from_rational(q, prec); }
  bool is_zero(const Ball& x) const { return x.is_zero(); }
  Ball add(const Ball& a, const Ball& b) const { return ian::add(a, b, prec); }
  Ball sub(const Ball& a, const Ball& b) const { return ian::sub(a, b, prec); }
  Ball mul(const Ball& a, const Ball& b) const { return ian::mul(a, b, prec); }
  Ball neg(const Ball& a) const { return -a; }
  Ball scale(const Ball& a, const Rational& q) const { return ian::mul(a, q, prec); }
  Ball inv(const Ball& a) const { return ian::recip(a, prec); }
  Rational abs_lower(const Ball& a) const { return a.abs_lower(); }
  Rational abs_upper(const Ball& a) const { return a.abs_upper(); }
};

}  // namespace ian
