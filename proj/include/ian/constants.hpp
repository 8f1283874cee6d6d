#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ian/ball.hpp"
#include "ian/series.hpp"

namespace ian {

struct ConstantResult {
  std::string name;
  Ball ball;  // radius <= 10^-digits / 2
  int digits = 0;
  std::string derivation_hash;
};

ConstantResult machin_pi(int digits);
/// Throws NonpositiveArgument unless q > 0.
ConstantResult log_rational(const Rational& q, int digits);
/// Throws PointOutsideRadii unless |q| <= 1/2.
ConstantResult arctan_rational(const Rational& q, int digits);
ConstantResult arcsin_half(int digits);
ConstantResult dilog_half(int digits);
ConstantResult euler_e(int digits);
ConstantResult sine_at(const Rational& x, int digits);

// Series behind the constants, shared by the registry, the tests and the CLI.
SeriesExpr geometric_series();  // 1/(1-X)
SeriesExpr arctan_series();     // antiderivative of 1/(1+X^2)
SeriesExpr log_series();        // L(X) = log(1+X)
SeriesExpr arcsin_series();     // antiderivative of (1-X^2)^(-1/2)
SeriesExpr dilog_series();      // sum X^p / p^2
SeriesExpr exp_minus_one();     // compositional inverse of L
SeriesExpr sine_series();       // compositional inverse of arcsin

/// DSL text of the named series above ("G", "arctan", "L", "arcsin", "Li2", "E1", "sin").
std::string series_program(const std::string& name);

/// Registry lookup: pi, log2, arcsin_half, dilog_half, e, log:<q>, atan:<q>, sin:<q>.
/// Throws InvalidArgument for unknown names.
ConstantResult constant_by_name(const std::string& name, int digits);
std::vector<std::string> constant_names();

/// Half an ulp of the decimal digit contract: 10^-digits / 2.
Rational digit_tolerance(int digits);

}  // namespace ian
