#include "ian/eval.hpp"

#include <vector>

#include "ian/error.hpp"
#include "ian/majorant.hpp"
#include "ian/node.hpp"

namespace ian {

namespace {

constexpr long kMaxPrecision = 1L << 16;
constexpr int kMaxOrder = 1 << 14;

}  // namespace

EvalReport eval_at_report(const SeriesExpr& e, std::span<const Rational> x, const Rational& tol) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  if (static_cast<int>(x.size()) != e.arity()) throw Error(ErrorKind::ArityMismatch, "point size differs from arity");
  if (tol <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  EvalReport rep;
  if (e.arity() == 0) {
    for (long prec = 64; prec <= kMaxPrecision; prec *= 2) {
      const Ball* c = ball_trunc(e, prec, 0)->find(MultiIndex(0));
      Ball v = c ? *c : Ball();
      if (v.rad().to_rational() <= tol) return EvalReport{v, 0, prec, Rational(0)};
    }
    throw Error(ErrorKind::Unsupported, "precision limit reached");
  }
  std::vector<Rational> focus;
  for (const auto& xi : x) focus.push_back(abs(xi));
  const Majorant m = majorant_of(e, focus);
  const Rational half = tol / 2;
  int N = 8;
  Rational tail = tail_bound(m, x, N);
  while (tail > half) {
    if (N >= kMaxOrder) throw Error(ErrorKind::Unsupported, "truncation order limit reached");
    N *= 2;
    tail = tail_bound(m, x, N);
  }
  for (long prec = 64; prec <= kMaxPrecision; prec *= 2) {
    auto t = ball_trunc(e, prec, N);
    BallField f{prec + 16};
    Ball s = kernels::partial_sum(f, *t, x, N).add_error(tail);
    if (s.rad().to_rational() <= tol) return EvalReport{s, N, prec, tail};
  }
  throw Error(ErrorKind::Unsupported, "precision limit reached");
}

Ball eval_at(const SeriesExpr& e, std::span<const Rational> x, const Rational& tol) {
  return eval_at_report(e, x, tol).value;
}

Ball translate_coeff(const SeriesExpr& e, std::span<const Rational> a, const MultiIndex& beta, const Rational& tol) {
  if (beta.arity() != e.arity()) throw Error(ErrorKind::ArityMismatch, "index arity");
  SeriesExpr t = translate(e, std::vector<Rational>(a.begin(), a.end()));
  Coefficient c = coeff(t, beta, tol);
  if (const auto* q = std::get_if<Rational>(&c)) return Ball::from_rational(*q, 128);
  return std::get<Ball>(c);
}

}  // namespace ian
