#pragma once

#include <utility>
#include <vector>

#include "ian/series.hpp"
#include "ian/trunc.hpp"

namespace ian {

/// f(g_1, ..., g_n); each g_j must have zero constant term.
SeriesExpr compose_series(const SeriesExpr& e, std::vector<SeriesExpr> g);
/// Compositional inverse of a univariate f with f(0) = 0, f'(0) != 0.
SeriesExpr inverse_series(const SeriesExpr& e);
/// Solution g(X) of F(X, g(X)) = 0 for F_1..F_m in n + m variables (X first,
/// then Y). Requires F(0) = 0 and an invertible Jacobian dF/dY at 0.
std::vector<SeriesExpr> implicit_series(std::vector<SeriesExpr> F);
/// (Re f_C, Im f_C) in 2n variables (x_1..x_n, y_1..y_n).
std::pair<SeriesExpr, SeriesExpr> complexify(const SeriesExpr& e);

struct RegularityReport {
  bool regular = false;
  int d = 0;
};

/// Order of f(0, X_n) read from a truncation.
RegularityReport regular_order(const TruncatedSeries& f);

/// Coefficient window {alpha : |alpha'| <= nx, alpha_n <= nn} where alpha'
/// drops the last variable. nn < 0 selects the default d + 8.
struct Window {
  int nx = 8;
  int nn = -1;

  bool contains(const MultiIndex& alpha) const;
};

struct DivisionResult {
  int d = 0;
  Window window;
  Trunc<Rational> h;               // quotient, on the window
  std::vector<Trunc<Rational>> r;  // remainder coefficients of X_n^0..X_n^(d-1), in X'
  Trunc<Rational> remainder;       // the same remainder as a series in all n variables
};

struct PreparationResult {
  int d = 0;
  Window window;
  Trunc<Rational> P;               // X_n^d + a_(d-1) X_n^(d-1) + ... + a_0
  std::vector<Trunc<Rational>> a;  // a_0..a_(d-1), in X'
  Trunc<Rational> u;               // unit, on the window
};

/// g = f h + r with deg_{X_n} r < d, exact on the window. extra_passes adds
/// fixpoint iterations beyond the number needed (uniqueness probes).
DivisionResult wdiv(const SeriesExpr& f, const SeriesExpr& g, int d, Window window, int extra_passes = 0);
/// f = P u with P a Weierstrass polynomial of degree d, exact on the window.
PreparationResult wprep(const SeriesExpr& f, int d, Window window);

/// Product of two windowed series, keeping only indices inside the window.
Trunc<Rational> window_mul(const Trunc<Rational>& a, const Trunc<Rational>& b, const Window& w);

}  // namespace ian
