#pragma once

#include <vector>

#include "ian/ball.hpp"
#include "ian/polynomial.hpp"
#include "ian/series.hpp"

namespace ian {

/// Root y(X) of P(X, Y) = 0 with y(0) = y0. P has arity 2 (X is variable 0,
/// Y is variable 1).
struct AlgebraicSeriesDef {
  Polynomial P;
  Rational y0;
};

/// Validates the definition: P(0, y0) = 0 (InconsistentDefinition),
/// dP/dY(0, y0) != 0 (NotSimpleRoot), Res_Y(P, dP/dY) not identically zero
/// (DegenerateDiscriminant).
AlgebraicSeriesDef make_algebraic_def(Polynomial P, Rational y0);

SeriesExpr algebraic_series(const AlgebraicSeriesDef& def);

/// Coefficients y_0..y_N by Newton iteration with precision doubling.
std::vector<Rational> lift_algebraic(const AlgebraicSeriesDef& def, int N);

struct RadiusBound {
  Rational M;
  Rational r;
};

/// |y_p| <= M r^-p for every p. r is half a certified lower bound on the
/// smallest nonzero root modulus of Res_Y(P, P_Y) * lc_Y(P), capped at 2.
RadiusBound radius_bound(const AlgebraicSeriesDef& def);

/// Res_Y(P, dP/dY) as a polynomial in X (arity 1).
Polynomial y_discriminant(const Polynomial& P);

struct IsolatingInterval {
  Rational lo;
  Rational hi;
};

/// One interval per distinct real root, ordered left to right. p has arity 1.
std::vector<IsolatingInterval> isolate_real_roots(const Polynomial& p);
/// Number of distinct real roots of p in (a, b].
int sturm_count(const Polynomial& p, const Rational& a, const Rational& b);
/// Ball of radius <= eps around the root isolated by iv.
Ball refine_root(const Polynomial& p, const IsolatingInterval& iv, const Rational& eps);

}  // namespace ian
