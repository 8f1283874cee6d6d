#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ian/polynomial.hpp"
#include "ian/series.hpp"

namespace ian {

// Randomized derivations for property suites. Every generated expression is
// valid by construction (preconditions are arranged, not hoped for).
struct DagOptions {
  int max_depth = 6;
  int max_arity = 2;
  bool allow_certified = true;   // Translate and IntLast nodes
  bool allow_structural = true;  // Compose, Inverse, Implicit, Re/Im
};

class DagGenerator {
 public:
  explicit DagGenerator(std::uint64_t seed, DagOptions options = {});

  /// Random expression of the given arity with depth <= options.max_depth.
  SeriesExpr expr(int arity);
  /// Random point with |x_i| <= fraction * r_i, r the certified majorant radii.
  std::vector<Rational> point_inside(const SeriesExpr& e, const Rational& fraction);
  /// Univariate exact f with f(0) = 0 and f'(0) != 0.
  SeriesExpr invertible();
  /// Exact F_1..F_m in n + m variables with F(0) = 0 and invertible dF/dY(0).
  std::vector<SeriesExpr> implicit_system(int n, int m);
  /// Polynomial in n variables regular of order d in the last variable.
  Polynomial regular_polynomial(int n, int d, int max_degree);
  Polynomial polynomial(int n, int max_degree, int terms, bool zero_constant);

  Rational small_rational();
  int uniform(int lo, int hi);
  std::mt19937_64& rng() { return rng_; }

 private:
  SeriesExpr gen(int arity, int depth, bool exact_only);
  SeriesExpr leaf(int arity, bool exact_only);
  SeriesExpr without_constant(const SeriesExpr& e);

  std::mt19937_64 rng_;
  DagOptions opt_;
};

}  // namespace ian
