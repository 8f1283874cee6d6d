#include "ian/ball.hpp"

#include <algorithm>

#include "ian/error.hpp"

namespace ian {

Dyadic::Dyadic(Integer mantissa, long exponent) : man_(std::move(mantissa)), exp_(exponent) { normalize(); }

void Dyadic::normalize() {
  if (sgn(man_) == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
    exp_ += static_cast<long>(tz);
  }
}

long Dyadic::bits() const noexcept {
  if (sgn(man_) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

Rational Dyadic::to_rational() const {
  Rational r(man_);
  return Rational(r * ian::pow2(exp_));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.exp_ == b.exp_) return Dyadic(Integer(a.man_ + b.man_), a.exp_);
  const Dyadic& lo = a.exp_ < b.exp_ ? a : b;
  const Dyadic& hi = a.exp_ < b.exp_ ? b : a;
  Integer shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), hi.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(hi.exp_ - lo.exp_));
  return Dyadic(Integer(shifted + lo.man_), lo.exp_);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero() || b.is_zero()) return Dyadic();
  return Dyadic(Integer(a.man_ * b.man_), a.exp_ + b.exp_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  // same sign: compare magnitudes via msb first
  long ma = a.msb(), mb = b.msb();
  if (ma != mb) return sa > 0 ? (ma <=> mb) : (mb <=> ma);
  Dyadic d = a - b;
  return d.sign() <=> 0;
}

Dyadic round(const Dyadic& x, long prec, Round mode) {
  long nbits = x.bits();
  if (nbits <= prec) return x;
  auto shift = static_cast<mp_bitcnt_t>(nbits - prec);
  Integer q;
  const mpz_srcptr m = x.mantissa().get_mpz_t();
  switch (mode) {
    case Round::Down: mpz_fdiv_q_2exp(q.get_mpz_t(), m, shift); break;
    case Round::Up: mpz_cdiv_q_2exp(q.get_mpz_t(), m, shift); break;
    case Round::Nearest: {
      Integer r;
      mpz_tdiv_q_2exp(q.get_mpz_t(), m, shift);
      mpz_tdiv_r_2exp(r.get_mpz_t(), m, shift);
      // |r| >= 2^(shift-1) rounds away from zero
      if (mpz_sizeinbase(r.get_mpz_t(), 2) >= shift && sgn(r) != 0) {
        q += sgn(r);
      }
      break;
    }
  }
  return Dyadic(q, x.exponent() + static_cast<long>(shift));
}

Dyadic round_rational(const Rational& q, long prec, Round mode) {
  if (sgn(q) == 0) return Dyadic();
  if (q.get_den() == 1 || mpz_popcount(q.get_den_mpz_t()) == 1) {
    // already dyadic
    long shift = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 1;
    return round(Dyadic(q.get_num(), -shift), prec, mode);
  }
  long e0 = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
            static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  long s = prec - e0;
  Integer num = q.get_num();
  Integer den = q.get_den();
  if (s >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(s));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-s));
  }
  Integer m;
  switch (mode) {
    case Round::Down: mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t()); break;
    case Round::Up: mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t()); break;
    case Round::Nearest: {
      Integer r;
      mpz_tdiv_qr(m.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      Integer twice = 2 * abs(r);
      if (twice >= den) m += sgn(r);
      break;
    }
  }
  return Dyadic(m, -s);
}

Dyadic add_up(const Dyadic& a, const Dyadic& b) {
  constexpr long kBits = Ball::kRadiusBits;
  if (a.is_zero()) return round(b, kBits, Round::Up);
  if (b.is_zero()) return round(a, kBits, Round::Up);
  const Dyadic& big = a.msb() >= b.msb() ? a : b;
  const Dyadic& small = a.msb() >= b.msb() ? b : a;
  if (small.msb() < big.msb() - 2 * kBits) {
    // small is below one ulp of big at kBits bits
    Dyadic ulp = Dyadic::pow2(big.msb() - kBits + 1);
    return round(round(big, kBits, Round::Up) + ulp, kBits, Round::Up);
  }
  return round(a + b, kBits, Round::Up);
}

Dyadic mul_up(const Dyadic& a, const Dyadic& b) { return round(a * b, Ball::kRadiusBits, Round::Up); }

Dyadic to_dyadic_up(const Rational& q) { return round_rational(q, Ball::kRadiusBits, Round::Up); }

Ball::Ball(Dyadic mid, Dyadic rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
  if (rad_.sign() < 0) throw Error(ErrorKind::InvalidArgument, "negative ball radius");
}

Ball Ball::from_rational(const Rational& q, long prec) {
  Dyadic m = round_rational(q, prec, Round::Nearest);
  Rational err = abs(q - m.to_rational());
  return Ball(m, sgn(err) == 0 ? Dyadic() : to_dyadic_up(err));
}

Ball Ball::enclosing(const Rational& lo, const Rational& hi, long prec) {
  Rational center = (lo + hi) / 2;
  Dyadic m = round_rational(center, prec, Round::Nearest);
  Rational mr = m.to_rational();
  Rational r = std::max(abs(hi - mr), abs(mr - lo));
  return Ball(m, sgn(r) == 0 ? Dyadic() : to_dyadic_up(r));
}

bool Ball::contains_zero() const { return abs(mid_) <= rad_; }

bool Ball::contains(const Rational& q) const { return abs(q - mid_.to_rational()) <= rad_.to_rational(); }

bool Ball::contains(const Ball& b) const {
  // |b.mid - mid| + b.rad <= rad
  return abs(b.mid_ - mid_) + b.rad_ <= rad_;
}

bool Ball::overlaps(const Ball& b) const { return abs(b.mid_ - mid_) <= rad_ + b.rad_; }

Rational Ball::abs_upper() const { return abs(mid_).to_rational() + rad_.to_rational(); }

Rational Ball::abs_lower() const {
  Rational v = abs(mid_).to_rational() - rad_.to_rational();
  return v > 0 ? v : Rational(0);
}

Ball Ball::add_error(const Rational& e) const {
  if (sgn(e) == 0) return *this;
  return Ball(mid_, add_up(rad_, to_dyadic_up(abs(e))));
}

std::string Ball::to_string(int digits) const {
  return to_decimal(mid_.to_rational(), digits) + " +/- " + to_sci_upper(rad_.to_rational());
}

namespace {

Ball finish(const Dyadic& exact_mid, long prec, const Dyadic& rad) {
  Dyadic m = round(exact_mid, prec, Round::Nearest);
  Dyadic err = abs(exact_mid - m);
  return Ball(m, add_up(rad, err));
}

}  // namespace

Ball add(const Ball& a, const Ball& b, long prec) {
  Dyadic rad = add_up(a.rad(), b.rad());
  if (a.mid().is_zero()) return finish(b.mid(), prec, rad);
  if (b.mid().is_zero()) return finish(a.mid(), prec, rad);
  const Ball& big = a.mid().msb() >= b.mid().msb() ? a : b;
  const Ball& small = a.mid().msb() >= b.mid().msb() ? b : a;
  if (small.mid().msb() < big.mid().msb() - prec - 64) {
    // fold the negligible midpoint into the radius
    return finish(big.mid(), prec, add_up(rad, Dyadic::pow2(small.mid().msb() + 1)));
  }
  return finish(a.mid() + b.mid(), prec, rad);
}

Ball sub(const Ball& a, const Ball& b, long prec) { return add(a, -b, prec); }

Ball mul(const Ball& a, const Ball& b, long prec) {
  Dyadic rad = add_up(mul_up(abs(a.mid()), b.rad()), mul_up(abs(b.mid()), a.rad()));
  rad = add_up(rad, mul_up(a.rad(), b.rad()));
  return finish(a.mid() * b.mid(), prec, rad);
}

Ball mul(const Ball& a, const Rational& q, long prec) {
  if (sgn(q) == 0) return Ball();
  if (q.get_den() == 1) return mul(a, Ball(Dyadic(q.get_num(), 0), Dyadic()), prec);
  Rational exact = a.mid().to_rational() * q;
  Dyadic m = round_rational(exact, prec, Round::Nearest);
  Rational err = abs(exact - m.to_rational()) + abs(q) * a.rad().to_rational();
  return Ball(m, sgn(err) == 0 ? Dyadic() : to_dyadic_up(err));
}

Ball div(const Ball& a, const Rational& q, long prec) {
  if (sgn(q) == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  return mul(a, Rational(1 / q), prec);
}

Ball recip(const Ball& a, long prec) {
  if (a.contains_zero()) throw Error(ErrorKind::NonUnitReciprocal, "reciprocal of a ball containing 0");
  Rational m = a.mid().to_rational();
  Rational q = 1 / m;
  Dyadic qm = round_rational(q, prec, Round::Nearest);
  Rational err = abs(q - qm.to_rational());
  if (!a.rad().is_zero()) {
    Rational am = abs(m);
    Rational r = a.rad().to_rational();
    err += r / (am * (am - r));
  }
  return Ball(qm, sgn(err) == 0 ? Dyadic() : to_dyadic_up(err));
}

Ball div(const Ball& a, const Ball& b, long prec) { return mul(a, recip(b, prec + 8), prec); }

Ball pow(const Ball& a, unsigned k, long prec) {
  Ball result(Dyadic(1), Dyadic());
  Ball base = a;
  while (k) {
    if (k & 1u) result = mul(result, base, prec);
    k >>= 1;
    if (k) base = mul(base, base, prec);
  }
  return result;
}

}  // namespace ian
