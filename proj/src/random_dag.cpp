#include "ian/random_dag.hpp"

#include <algorithm>
#include <numeric>

#include "ian/algebraic.hpp"
#include "ian/error.hpp"
#include "ian/majorant.hpp"
#include "ian/node.hpp"
#include "ian/weierstrass.hpp"

namespace ian {

namespace {

enum class Op { Add, Mul, Scale, Recip, Subst, Translate, Antider, Deriv, Restrict0, Permute, Compose, Inverse, Implicit, Complexify, IntLast };

Polynomial from_rows(const std::vector<std::vector<long>>& rows) {
  Polynomial P(2);
  for (size_t j = 0; j < rows.size(); ++j) {
    for (size_t i = 0; i < rows[j].size(); ++i) {
      P.add_term(MultiIndex{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, Rational(rows[j][i]));
    }
  }
  return P;
}

const std::vector<AlgebraicSeriesDef>& algebraic_leaves() {
  static const std::vector<AlgebraicSeriesDef> defs = [] {
    std::vector<AlgebraicSeriesDef> d;
    d.push_back(make_algebraic_def(from_rows({{-1}, {1, -1}}), Rational(1)));          // 1/(1-X)
    d.push_back(make_algebraic_def(from_rows({{-1, -1}, {0}, {1}}), Rational(1)));     // sqrt(1+X)
    d.push_back(make_algebraic_def(from_rows({{-1, -1}, {0}, {1}}), Rational(-1)));    // -sqrt(1+X)
    d.push_back(make_algebraic_def(from_rows({{-1}, {0}, {1, 1}}), Rational(1)));      // (1+X)^(-1/2)
    d.push_back(make_algebraic_def(from_rows({{-1}, {0, 1}, {0}, {1}}), Rational(1))); // Y^3 + XY - 1
    d.push_back(make_algebraic_def(from_rows({{0, -1}, {-1}, {2}}), Rational(1, 2)));  // 2Y^2 - Y - X
    return d;
  }();
  return defs;
}

Rational exact_constant(const SeriesExpr& e) {
  const Rational* c = exact_trunc(e, 0)->find(MultiIndex(e.arity()));
  return c ? *c : Rational(0);
}

}  // namespace

DagGenerator::DagGenerator(std::uint64_t seed, DagOptions options) : rng_(seed), opt_(options) {}

int DagGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational DagGenerator::small_rational() {
  Rational q(uniform(-3, 3), uniform(1, 3));
  q.canonicalize();
  return q;
}

Polynomial DagGenerator::polynomial(int n, int max_degree, int terms, bool zero_constant) {
  Polynomial p(n);
  for (int k = 0; k < terms; ++k) {
    MultiIndex alpha(n);
    int budget = uniform(zero_constant ? 1 : 0, max_degree);
    for (int i = 0; i < n && budget > 0; ++i) {
      int e = i + 1 == n ? budget : uniform(0, budget);
      alpha.set(i, static_cast<std::uint32_t>(e));
      budget -= e;
    }
    if (zero_constant && alpha.degree() == 0) continue;
    p.add_term(alpha, small_rational());
  }
  return p;
}

Polynomial DagGenerator::regular_polynomial(int n, int d, int max_degree) {
  Polynomial p = polynomial(n, max_degree, uniform(2, 6), false);
  // remove every pure X_n^k with k < d, then plant a unit coefficient at X_n^d
  Polynomial out(n);
  for (const auto& [alpha, c] : p.terms()) {
    bool pure = true;
    for (int i = 0; i + 1 < n; ++i) pure = pure && alpha[i] == 0;
    if (pure && static_cast<int>(alpha[n - 1]) <= d) continue;
    out.add_term(alpha, c);
  }
  Rational lead = small_rational();
  if (lead == 0) lead = 1;
  out.add_term(MultiIndex::unit(n, n - 1, static_cast<std::uint32_t>(d)), lead);
  return out;
}

SeriesExpr DagGenerator::without_constant(const SeriesExpr& e) {
  const Rational c = exact_constant(e);
  return c == 0 ? e : sub(e, constant(e.arity(), c));
}

SeriesExpr DagGenerator::leaf(int arity, bool exact_only) {
  (void)exact_only;
  if (uniform(0, 3) != 0 || arity == 0) {
    Polynomial p = polynomial(arity, 3, uniform(1, 4), false);
    if (p.is_zero()) p = Polynomial::constant(arity, Rational(1));
    return poly(p);
  }
  const auto& defs = algebraic_leaves();
  SeriesExpr a = algebraic_series(defs[static_cast<size_t>(uniform(0, static_cast<int>(defs.size()) - 1))]);
  Polynomial h = polynomial(arity, 1, arity, true);
  if (h.is_zero()) h = Polynomial::variable(arity, 0);
  return subst_poly(a, {h});
}

SeriesExpr DagGenerator::gen(int arity, int depth, bool exact_only) {
  if (depth <= 1 || uniform(0, 4) == 0) return leaf(arity, exact_only);
  const int sub_depth = depth - 1;
  std::vector<Op> ops{Op::Add, Op::Add, Op::Mul, Op::Mul, Op::Scale, Op::Recip, Op::Recip, Op::Subst, Op::Antider, Op::Deriv};
  if (arity + 1 <= opt_.max_arity) ops.push_back(Op::Restrict0);
  if (arity >= 2) ops.push_back(Op::Permute);
  if (opt_.allow_certified && !exact_only) {
    ops.push_back(Op::Translate);
    ops.push_back(Op::Translate);
    if (arity + 1 <= opt_.max_arity) ops.push_back(Op::IntLast);
  }
  if (opt_.allow_structural) {
    ops.push_back(Op::Compose);
    if (arity == 1) ops.push_back(Op::Inverse);
    if (arity >= 1 && arity + 1 <= opt_.max_arity) ops.push_back(Op::Implicit);
    if (arity % 2 == 0 && arity >= 2) ops.push_back(Op::Complexify);
  }
  const Op op = ops[static_cast<size_t>(uniform(0, static_cast<int>(ops.size()) - 1))];
  try {
    switch (op) {
      case Op::Add:
        return add(gen(arity, sub_depth, exact_only), gen(arity, sub_depth, exact_only));
      case Op::Mul:
        return mul(gen(arity, sub_depth, exact_only), gen(arity, sub_depth, exact_only));
      case Op::Scale: {
        Rational q = small_rational();
        return scale(q == 0 ? Rational(1, 2) : q, gen(arity, sub_depth, exact_only));
      }
      case Op::Recip: {
        SeriesExpr c = gen(arity, sub_depth, exact_only);
        Rational c0;
        if (c.is_exact()) {
          c0 = exact_constant(c);
        } else {
          const Ball* b = ball_trunc(c, 64, 0)->find(MultiIndex(arity));
          c0 = b ? b->mid().to_rational() : Rational(0);
        }
        // shift the constant term to a value of modulus >= 1
        Rational target = Rational(uniform(1, 3)) * (uniform(0, 1) ? 1 : -1);
        Rational shift = target - c0;
        shift = Rational(mpz_class(shift.get_num() * 64 / shift.get_den()), 64);
        return recip(shift == 0 ? c : add(c, constant(arity, shift)));
      }
      case Op::Subst: {
        const int inner = uniform(1, std::min(2, opt_.max_arity));
        SeriesExpr c = gen(inner, sub_depth, exact_only);
        std::vector<Polynomial> h;
        for (int j = 0; j < inner; ++j) {
          Polynomial p = polynomial(arity, 2, uniform(1, 2), true);
          if (p.is_zero()) p = Polynomial::variable(arity, uniform(0, arity - 1));
          h.push_back(p);
        }
        return subst_poly(c, h);
      }
      case Op::Translate: {
        SeriesExpr c = gen(arity, sub_depth, exact_only);
        std::vector<Rational> a = point_inside(c, Rational(1, 8));
        return translate(c, a);
      }
      case Op::Antider:
        return antider(gen(arity, sub_depth, exact_only), uniform(0, arity - 1));
      case Op::Deriv:
        return deriv(gen(arity, sub_depth, exact_only), uniform(0, arity - 1));
      case Op::Restrict0:
        return restrict0(gen(arity + 1, sub_depth, exact_only), uniform(0, arity));
      case Op::Permute: {
        std::vector<int> sigma(static_cast<size_t>(arity));
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng_);
        return permute(gen(arity, sub_depth, exact_only), sigma);
      }
      case Op::Compose: {
        const int outer_arity = uniform(1, std::min(2, opt_.max_arity));
        SeriesExpr outer = gen(outer_arity, std::min(sub_depth, 3), exact_only);
        std::vector<SeriesExpr> inner;
        for (int j = 0; j < outer_arity; ++j) inner.push_back(without_constant(gen(arity, std::min(sub_depth, 2), true)));
        return compose_series(outer, inner);
      }
      case Op::Inverse:
        (void)exact_only;
        return inverse_series(invertible());
      case Op::Implicit:
        return implicit_series(implicit_system(arity, 1))[0];
      case Op::Complexify: {
        auto [re, im] = complexify(gen(arity / 2, sub_depth, exact_only));
        return uniform(0, 1) ? re : im;
      }
      case Op::IntLast: {
        SeriesExpr c = gen(arity + 1, sub_depth, exact_only);
        const Majorant m = majorant_of(c);
        Rational a = m.radii.back() * Rational(uniform(1, 4), 10);
        a = round_rational(a, 8, Round::Down).to_rational();
        return integrate_last(c, uniform(0, 1) ? a : Rational(-a));
      }
    }
  } catch (const Error&) {
    // preconditions arranged above can still fail for majorant reasons; fall back to a leaf
  }
  return leaf(arity, exact_only);
}

SeriesExpr DagGenerator::expr(int arity) { return gen(arity, opt_.max_depth, false); }

std::vector<Rational> DagGenerator::point_inside(const SeriesExpr& e, const Rational& fraction) {
  const Majorant m = majorant_of(e);
  std::vector<Rational> x;
  for (const auto& r : m.radii) {
    Rational u(uniform(-16, 16), 16);
    x.push_back(round_rational(r * fraction * u, 16, Round::Down).to_rational());
  }
  for (auto& xi : x) {
    // round toward zero so |x_i| never grows
    if (xi < 0) xi = -round_rational(-xi, 16, Round::Down).to_rational();
  }
  return x;
}

SeriesExpr DagGenerator::invertible() {
  Rational c1 = small_rational();
  if (c1 == 0) c1 = 1;
  DagOptions inner = opt_;
  inner.allow_structural = false;
  DagGenerator sub(rng_(), inner);
  SeriesExpr h = sub.gen(1, 2, true);
  // f = c1 X + X^2 h(X)
  Polynomial x(1);
  x.add_term(MultiIndex{1}, c1);
  Polynomial x2(1);
  x2.add_term(MultiIndex{2}, 1);
  return add(poly(x), mul(poly(x2), h));
}

std::vector<SeriesExpr> DagGenerator::implicit_system(int n, int m) {
  const int total = n + m;
  DagOptions inner = opt_;
  inner.allow_structural = false;
  DagGenerator sub(rng_(), inner);
  std::vector<SeriesExpr> F;
  for (int i = 0; i < m; ++i) {
    // F_i = c Y_i + (coupling to other Y) + X_k h + Y_i^2 k
    Polynomial lin(total);
    Rational c = small_rational();
    if (c == 0) c = 1;
    lin.add_term(MultiIndex::unit(total, n + i), c);
    if (m > 1) lin.add_term(MultiIndex::unit(total, n + (i + 1) % m), Rational(uniform(-1, 1), 4));
    SeriesExpr h = sub.gen(total, 2, true);
    SeriesExpr k = sub.gen(total, 2, true);
    Polynomial xk(total);
    xk.add_term(MultiIndex::unit(total, n > 0 ? uniform(0, n - 1) : n + i), 1);
    Polynomial yy(total);
    yy.add_term(MultiIndex::unit(total, n + i, 2), 1);
    SeriesExpr Fi = add(poly(lin), add(mul(poly(xk), h), mul(poly(yy), k)));
    F.push_back(Fi);
  }
  return F;
}

}  // namespace ian
