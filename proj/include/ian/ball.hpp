#pragma once

#include <compare>
#include <string>

#include "ian/rational.hpp"

namespace ian {

/// mantissa * 2^exponent, kept canonical (odd mantissa, or zero with exponent 0)
/// so that equal values are bitwise equal.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Integer mantissa, long exponent);
  explicit Dyadic(long value) : Dyadic(Integer(value), 0) {}

  static Dyadic pow2(long k) { return Dyadic(Integer(1), k); }

  const Integer& mantissa() const noexcept { return man_; }
  long exponent() const noexcept { return exp_; }
  int sign() const noexcept { return sgn(man_); }
  bool is_zero() const noexcept { return sgn(man_) == 0; }
  long bits() const noexcept;
  /// floor(log2|v|); only meaningful for nonzero values.
  long msb() const noexcept { return exp_ + bits() - 1; }

  Rational to_rational() const;
  Dyadic mul_2exp(long k) const { return is_zero() ? *this : Dyadic(man_, exp_ + k); }

  Dyadic operator-() const { return Dyadic(Integer(-man_), exp_); }
  friend Dyadic abs(const Dyadic& d) { return d.sign() < 0 ? -d : d; }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();
  Integer man_{0};
  long exp_ = 0;
};

enum class Round { Down, Up, Nearest };

/// Rounds to at most `prec` significant bits (Down/Up toward -inf/+inf,
/// Nearest with ties away from zero).
Dyadic round(const Dyadic& x, long prec, Round mode);
/// Rounds a rational to a dyadic with about `prec` significant bits.
Dyadic round_rational(const Rational& q, long prec, Round mode);

/// Midpoint-radius enclosure [mid - rad, mid + rad] of a real number. Every
/// arithmetic function below returns a ball that contains the exact result
/// for all inputs drawn from the argument balls.
class Ball {
 public:
  static constexpr long kRadiusBits = 30;

  Ball() = default;
  Ball(Dyadic mid, Dyadic rad);

  static Ball from_rational(const Rational& q, long prec);
  static Ball enclosing(const Rational& lo, const Rational& hi, long prec);

  const Dyadic& mid() const noexcept { return mid_; }
  const Dyadic& rad() const noexcept { return rad_; }

  bool is_exact() const noexcept { return rad_.is_zero(); }
  bool is_zero() const noexcept { return mid_.is_zero() && rad_.is_zero(); }
  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool contains(const Ball& b) const;
  bool overlaps(const Ball& b) const;

  Rational lower() const { return mid_.to_rational() - rad_.to_rational(); }
  Rational upper() const { return mid_.to_rational() + rad_.to_rational(); }
  /// Upper bound of |x| over the ball.
  Rational abs_upper() const;
  /// Lower bound of |x| over the ball (0 if the ball contains 0).
  Rational abs_lower() const;

  Ball operator-() const { return Ball(-mid_, rad_); }
  /// Widens the radius by e >= 0.
  Ball add_error(const Rational& e) const;

  std::string to_string(int digits = 20) const;

  friend bool operator==(const Ball& a, const Ball& b) { return a.mid_ == b.mid_ && a.rad_ == b.rad_; }

 private:
  Dyadic mid_;
  Dyadic rad_;
};

Ball add(const Ball& a, const Ball& b, long prec);
Ball sub(const Ball& a, const Ball& b, long prec);
Ball mul(const Ball& a, const Ball& b, long prec);
Ball mul(const Ball& a, const Rational& q, long prec);
Ball div(const Ball& a, const Rational& q, long prec);
/// Throws Error(NonUnitReciprocal) when the ball contains zero.
Ball recip(const Ball& a, long prec);
Ball div(const Ball& a, const Ball& b, long prec);
Ball pow(const Ball& a, unsigned k, long prec);

/// Radius helpers: results are upper bounds with short mantissas.
Dyadic add_up(const Dyadic& a, const Dyadic& b);
Dyadic mul_up(const Dyadic& a, const Dyadic& b);
Dyadic to_dyadic_up(const Rational& q);

}  // namespace ian
