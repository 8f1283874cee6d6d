#include "ian/constants.hpp"

#include <cmath>
#include <map>

#include "ian/dsl.hpp"
#include "ian/error.hpp"
#include "ian/eval.hpp"
#include "ian/majorant.hpp"

namespace ian {

namespace {

const std::map<std::string, std::string>& programs() {
  static const std::map<std::string, std::string> m = [] {
    std::map<std::string, std::string> p;
    p["G"] = "(recip (poly 1 (1 0) (-1 1)))";
    p["arctan"] = "(antider 1 (recip (poly 1 (1 0) (1 2))))";
    p["L"] = "(antider 1 (recip (poly 1 (1 0) (1 1))))";
    // y = (1 - X)^(-1/2) as the root of (1 - X) Y^2 - 1 with y(0) = 1, at X^2
    p["arcsin"] = "(antider 1 (subst (alg (-1) (0) (1 -1) 1) (poly 1 (1 2))))";
    // S(X) = int_0^1 G(X T) dT has coefficients 1/(p+1)
    p["Li2"] = "(antider 1 (intlast 1 (subst " + p["G"] + " (poly 2 (1 1 1)))))";
    p["E1"] = "(inverse " + p["L"] + ")";
    p["sin"] = "(inverse " + p["arcsin"] + ")";
    return p;
  }();
  return m;
}

SeriesExpr build(const std::string& name) {
  auto r = dsl::compile(series_program(name));
  if (auto* d = std::get_if<dsl::Diagnostic>(&r)) throw Error(ErrorKind::Unsupported, d->to_string());
  return std::get<SeriesExpr>(r);
}

long working_bits(int digits) { return static_cast<long>(std::ceil(digits * 3.3219280948873623)) + 64; }

void check_digits(int digits) {
  if (digits < 1 || digits > 1000) throw Error(ErrorKind::InvalidArgument, "digits must be in [1, 1000]");
}

Ball at(const SeriesExpr& e, const Rational& x, const Rational& tol) {
  const Rational pt[1] = {x};
  return eval_at(e, pt, tol);
}

ConstantResult finish(std::string name, Ball b, int digits, const std::string& program) {
  if (b.rad().to_rational() > digit_tolerance(digits)) {
    throw Error(ErrorKind::Unsupported, name + ": enclosure misses its digit contract");
  }
  return ConstantResult{std::move(name), std::move(b), digits, dsl::hash_hex(program)};
}

Ball log2_ball(const Rational& tol) { return -at(log_series(), Rational(-1, 2), tol); }

}  // namespace

Rational digit_tolerance(int digits) { return pow10(-digits) / 2; }

std::string series_program(const std::string& name) {
  auto it = programs().find(name);
  if (it == programs().end()) throw Error(ErrorKind::InvalidArgument, "unknown series '" + name + "'");
  return it->second;
}

SeriesExpr geometric_series() {
  static const SeriesExpr e = build("G");
  return e;
}
SeriesExpr arctan_series() {
  static const SeriesExpr e = build("arctan");
  return e;
}
SeriesExpr log_series() {
  static const SeriesExpr e = build("L");
  return e;
}
SeriesExpr arcsin_series() {
  static const SeriesExpr e = build("arcsin");
  return e;
}
SeriesExpr dilog_series() {
  static const SeriesExpr e = build("Li2");
  return e;
}
SeriesExpr exp_minus_one() {
  static const SeriesExpr e = build("E1");
  return e;
}
SeriesExpr sine_series() {
  static const SeriesExpr e = build("sin");
  return e;
}

ConstantResult machin_pi(int digits) {
  check_digits(digits);
  const Rational tol = digit_tolerance(digits);
  const long prec = working_bits(digits);
  const Ball a = at(arctan_series(), Rational(1, 5), tol / 64);
  const Ball b = at(arctan_series(), Rational(1, 239), tol / 64);
  Ball pi = sub(mul(a, Rational(16), prec), mul(b, Rational(4), prec), prec);
  return finish("pi", pi, digits, "pi = 16 atan(1/5) - 4 atan(1/239); atan = " + series_program("arctan"));
}

ConstantResult log_rational(const Rational& q, int digits) {
  check_digits(digits);
  if (q <= 0) throw Error(ErrorKind::NonpositiveArgument, "log of " + to_string(q));
  const std::string program = "log(" + to_string(q) + ") = k log 2 + L(s - 1), log 2 = -L(-1/2); L = " + series_program("L");
  const std::string name = q == 2 ? "log2" : "log:" + to_string(q);
  if (q == 1) return finish(name, Ball(), digits, program);
  const Rational tol = digit_tolerance(digits);
  const long prec = working_bits(digits);
  long k = floor_log2(q);
  Rational s = q / pow2(k);
  if (s > Rational(4, 3)) {
    s /= 2;
    ++k;
  }
  Ball result;
  if (s != 1) result = at(log_series(), s - 1, tol / 4);
  if (k != 0) {
    const Ball l2 = log2_ball(tol / (4 * Rational(k < 0 ? -k : k)));
    result = add(result, mul(l2, Rational(k), prec), prec);
  }
  return finish(name, result, digits, program);
}

ConstantResult arctan_rational(const Rational& q, int digits) {
  check_digits(digits);
  if (abs(q) > Rational(1, 2)) throw Error(ErrorKind::PointOutsideRadii, "atan needs |q| <= 1/2");
  Ball b = at(arctan_series(), q, digit_tolerance(digits) / 2);
  return finish("atan:" + to_string(q), b, digits, "atan(" + to_string(q) + "); atan = " + series_program("arctan"));
}

ConstantResult arcsin_half(int digits) {
  check_digits(digits);
  Ball b = at(arcsin_series(), Rational(1, 2), digit_tolerance(digits) / 2);
  return finish("arcsin_half", b, digits, "arcsin(1/2); arcsin = " + series_program("arcsin"));
}

ConstantResult dilog_half(int digits) {
  check_digits(digits);
  Ball b = at(dilog_series(), Rational(1, 2), digit_tolerance(digits) / 2);
  return finish("dilog_half", b, digits, "Li2(1/2); Li2 = " + series_program("Li2"));
}

ConstantResult euler_e(int digits) {
  check_digits(digits);
  const Rational tol = digit_tolerance(digits);
  const Rational rho = majorant_of(exp_minus_one()).radii[0];
  long k = 0;
  // a small argument keeps the truncation order low; squarings are cheap
  while (pow2(-k) > rho / 16) ++k;
  const long prec = working_bits(digits) + k;
  Rational delta = tol / (pow2(k) * 8);
  for (int attempt = 0; attempt < 16; ++attempt, delta /= 256) {
    Ball w = add(at(exp_minus_one(), pow2(-k), delta), Ball::from_rational(1, prec), prec);
    for (long i = 0; i < k; ++i) w = mul(w, w, prec);
    if (w.rad().to_rational() <= tol) {
      return finish("e", w, digits,
                    "e = (1 + E1(2^-" + std::to_string(k) + "))^(2^" + std::to_string(k) + "); E1 = " + series_program("E1"));
    }
  }
  throw Error(ErrorKind::Unsupported, "e: precision schedule exhausted");
}

ConstantResult sine_at(const Rational& x, int digits) {
  check_digits(digits);
  const std::string name = "sin:" + to_string(x);
  const Rational tol = digit_tolerance(digits);
  const Rational ax = abs(x);
  // sin(3t) = 3 sin t - 4 sin^3 t brings the argument inside the certified disc
  const Rational rho = majorant_of(sine_series()).radii[0];
  long k = 0;
  Rational y = ax;
  while (y > rho / 16) {
    y /= 3;
    ++k;
  }
  const std::string program =
      "sin(x) by " + std::to_string(k) + " triple-angle steps; sin = " + series_program("sin");
  if (x == 0) return finish(name, Ball(), digits, program);
  const long prec = working_bits(digits) + 2 * k;
  Rational delta = tol / (4 * ian::pow(Rational(3), static_cast<unsigned>(k)));
  for (int attempt = 0; attempt < 16; ++attempt, delta /= 256) {
    Ball s = at(sine_series(), y, delta);
    for (long i = 0; i < k; ++i) {
      s = sub(mul(s, Rational(3), prec), mul(pow(s, 3, prec), Rational(4), prec), prec);
    }
    if (s.rad().to_rational() <= tol) return finish(name, x < 0 ? -s : s, digits, program);
  }
  throw Error(ErrorKind::Unsupported, "sin: precision schedule exhausted");
}

std::vector<std::string> constant_names() { return {"pi", "log2", "arcsin_half", "dilog_half", "e", "log:<q>", "atan:<q>", "sin:<q>"}; }

ConstantResult constant_by_name(const std::string& name, int digits) {
  if (name == "pi") return machin_pi(digits);
  if (name == "log2") return log_rational(Rational(2), digits);
  if (name == "arcsin_half") return arcsin_half(digits);
  if (name == "dilog_half") return dilog_half(digits);
  if (name == "e") return euler_e(digits);
  if (name.rfind("log:", 0) == 0) return log_rational(parse_rational(name.substr(4)), digits);
  if (name.rfind("atan:", 0) == 0) return arctan_rational(parse_rational(name.substr(5)), digits);
  if (name.rfind("sin:", 0) == 0) return sine_at(parse_rational(name.substr(4)), digits);
  throw Error(ErrorKind::InvalidArgument, "unknown constant '" + name + "'");
}

}  // namespace ian
