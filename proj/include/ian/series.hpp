#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ian/ball.hpp"
#include "ian/multi_index.hpp"
#include "ian/polynomial.hpp"
#include "ian/rational.hpp"

namespace ian {

struct Node;
struct AlgebraicSeriesDef;

enum class NodeKind {
  Poly,
  Alg,
  Add,
  Mul,
  Scale,
  Recip,
  SubstPoly,
  Compose,
  Translate,
  Antider,
  Deriv,
  Restrict0,
  Permute,
  Inverse,
  Implicit,
  Re,
  Im,
  IntLast,
};

const char* to_string(NodeKind kind);

/// Certified bound |a_alpha| <= M * prod r_i^-alpha_i for every alpha.
struct Majorant {
  Rational M;
  std::vector<Rational> radii;
};

/// Handle to an immutable node of a derivation DAG. Copies share the node
/// and its coefficient memo tables.
class SeriesExpr {
 public:
  SeriesExpr() = default;
  explicit SeriesExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  bool valid() const noexcept { return node_ != nullptr; }
  int arity() const;
  NodeKind kind() const;
  /// True when every coefficient is an exact rational.
  bool is_exact() const;

  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& ptr() const noexcept { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

using Coefficient = std::variant<Rational, Ball>;

std::string to_string(const Coefficient& c, int digits = 20);

/// Every coefficient of total degree <= order (zeros included).
struct TruncatedSeries {
  int arity = 0;
  int order = 0;
  std::map<MultiIndex, Coefficient> coeffs;

  const Coefficient& at(const MultiIndex& alpha) const;
};

// Node constructors. Variable indices are 0-based.
SeriesExpr poly(Polynomial p);
SeriesExpr constant(int arity, const Rational& c);
SeriesExpr add(const SeriesExpr& a, const SeriesExpr& b);
SeriesExpr sub(const SeriesExpr& a, const SeriesExpr& b);
SeriesExpr mul(const SeriesExpr& a, const SeriesExpr& b);
SeriesExpr scale(const Rational& q, const SeriesExpr& e);
/// Throws NonUnitReciprocal unless the constant term is provably nonzero.
SeriesExpr recip(const SeriesExpr& e);
/// f(h_1, ..., h_n); every h_j must vanish at 0.
SeriesExpr subst_poly(const SeriesExpr& e, std::vector<Polynomial> h);
/// Re-expansion at a; requires |a_i| < r_i for the certified majorant.
SeriesExpr translate(const SeriesExpr& e, std::vector<Rational> a);
SeriesExpr antider(const SeriesExpr& e, int var);
SeriesExpr deriv(const SeriesExpr& e, int var);
SeriesExpr restrict0(const SeriesExpr& e, int var);
/// Coefficient at alpha is e's coefficient at beta with beta[sigma[i]] = alpha[i].
SeriesExpr permute(const SeriesExpr& e, std::vector<int> sigma);
/// g(x') = integral_0^a e(x', z) dz over the last variable.
SeriesExpr integrate_last(const SeriesExpr& e, const Rational& a);

/// Default tolerance for certified coefficients.
Rational default_coeff_tolerance();

Coefficient coeff(const SeriesExpr& e, const MultiIndex& alpha);
/// Certified coefficients are refined until their radius is <= tol.
Coefficient coeff(const SeriesExpr& e, const MultiIndex& alpha, const Rational& tol);
TruncatedSeries truncate(const SeriesExpr& e, int N);
TruncatedSeries truncate(const SeriesExpr& e, int N, const Rational& tol);

}  // namespace ian
