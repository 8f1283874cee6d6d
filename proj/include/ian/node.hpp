#pragma once

// Node layout and memo tables. Used by the series, majorant and weierstrass
// implementations; not needed by library users.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ian/series.hpp"
#include "ian/trunc.hpp"

namespace ian {

/// Shared state of an implicit system F(X, Y) = 0 in n + m variables; each
/// component node reads its coordinate of the solution.
struct ImplicitSystem {
  std::vector<SeriesExpr> F;
  int n = 0;
  int m = 0;
  std::vector<std::vector<Rational>> jacobian_inverse;  // (dF/dY)(0)^-1
  std::mutex mu;
  std::shared_ptr<const std::vector<Trunc<Rational>>> solution;
};

struct NodeCache {
  std::mutex mu;
  std::shared_ptr<const Trunc<Rational>> exact;
  std::map<long, std::shared_ptr<const Trunc<Ball>>> balls;
  std::map<std::vector<Rational>, Majorant> majorants;
};

struct Node {
  NodeKind kind = NodeKind::Poly;
  int arity = 0;
  bool exact = true;
  std::vector<SeriesExpr> children;

  Polynomial poly;                   // Poly
  std::vector<Polynomial> polys;     // SubstPoly arguments
  std::vector<Rational> point;       // Translate point
  Rational scalar;                   // Scale factor, IntLast endpoint
  int index = 0;                     // variable for Antider/Deriv/Restrict0, component for Implicit
  std::vector<int> perm;             // Permute
  std::shared_ptr<const AlgebraicSeriesDef> alg;
  std::shared_ptr<ImplicitSystem> system;
  // Translate/IntLast: child majorant certified at construction, used for
  // the tail of every re-expanded coefficient.
  std::optional<Majorant> child_majorant;

  mutable NodeCache cache;
};

/// Exact coefficients up to total degree N. Throws Unsupported for nodes whose
/// coefficients are not exact. The returned window may be larger than N.
std::shared_ptr<const Trunc<Rational>> exact_trunc(const SeriesExpr& e, int N);
/// Ball coefficients at working precision prec up to total degree N.
std::shared_ptr<const Trunc<Ball>> ball_trunc(const SeriesExpr& e, long prec, int N);

// Solvers for the structural node kinds (weierstrass.cpp).
Trunc<Rational> inverse_trunc(const Node& node, int N);
std::shared_ptr<const std::vector<Trunc<Rational>>> implicit_solution(ImplicitSystem& sys, int N);

}  // namespace ian
