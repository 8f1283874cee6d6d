#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ian/series.hpp"

namespace ian {

/// Certified geometric majorant of e. The focus gives, per variable, the
/// radius the caller wants covered; it steers leaf boxes and shrink searches
/// but never affects validity. Results are cached per node and focus.
Majorant majorant_of(const SeriesExpr& e);
Majorant majorant_of(const SeriesExpr& e, std::span<const Rational> focus);

/// Upper bound of |sum_{|alpha| > N} a_alpha x^alpha| for any series bounded
/// by m. Throws PointOutsideRadii unless |x_i| < r_i for all i.
Rational tail_bound(const Majorant& m, std::span<const Rational> x, int N);

struct MajorantCheck {
  bool ok = true;
  std::optional<MultiIndex> witness;
};

/// Checks |coeff(e, alpha)| <= M prod r_i^-alpha_i for all |alpha| <= N.
MajorantCheck validate_majorant(const SeriesExpr& e, const Majorant& m, int N);

// Closed-form rules, exposed for checking against hand computations.
Majorant add_rule(const Majorant& a, const Majorant& b);
Majorant translate_rule(const Majorant& child, std::span<const Rational> a);

}  // namespace ian
