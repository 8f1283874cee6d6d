#pragma once

#include <span>

#include "ian/ball.hpp"
#include "ian/multi_index.hpp"
#include "ian/series.hpp"

namespace ian {

struct EvalReport {
  Ball value;
  int order = 0;   // final truncation order
  long prec = 0;   // final working precision (bits)
  Rational tail;   // tail bound used at that order
};

/// Ball of radius <= tol containing sum a_alpha x^alpha. Requires |x_i| < r_i
/// for the certified majorant of e.
Ball eval_at(const SeriesExpr& e, std::span<const Rational> x, const Rational& tol);
EvalReport eval_at_report(const SeriesExpr& e, std::span<const Rational> x, const Rational& tol);

/// Enclosure of D^beta e(a) / beta!, the beta-th coefficient of e re-expanded at a.
Ball translate_coeff(const SeriesExpr& e, std::span<const Rational> a, const MultiIndex& beta, const Rational& tol);

}  // namespace ian
