#include "ian/algebraic.hpp"

#include <algorithm>
#include <cmath>

#include "ian/error.hpp"
#include "ian/node.hpp"

namespace ian {

namespace {

// Dense univariate polynomial, index = degree, no trailing zeros.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly to_dense(const Polynomial& p) {
  if (p.arity() != 1) throw Error(ErrorKind::ArityMismatch, "expected a univariate polynomial");
  UPoly d(static_cast<size_t>(std::max(p.degree(), 0) + 1));
  for (const auto& [alpha, c] : p.terms()) d[alpha[0]] = c;
  trim(d);
  return d;
}

Polynomial from_dense(const UPoly& d) {
  Polynomial p(1);
  for (size_t k = 0; k < d.size(); ++k) p.add_term(MultiIndex{static_cast<std::uint32_t>(k)}, d[k]);
  return p;
}

Rational eval(const UPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const UPoly& p, const Rational& x) { return sgn(eval(p, x)); }

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

// Remainder of a by b (b nonzero).
UPoly rem(UPoly a, const UPoly& b) {
  const int db = deg(b);
  while (deg(a) >= db && !a.empty()) {
    Rational q = a.back() / b.back();
    const int shift = deg(a) - db;
    for (int k = 0; k <= db; ++k) a[static_cast<size_t>(k + shift)] -= q * b[static_cast<size_t>(k)];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly quo(UPoly a, const UPoly& b) {
  const int db = deg(b);
  if (deg(a) < db) return {};
  UPoly q(static_cast<size_t>(deg(a) - db + 1));
  while (deg(a) >= db && !a.empty()) {
    Rational c = a.back() / b.back();
    const int shift = deg(a) - db;
    q[static_cast<size_t>(shift)] = c;
    for (int k = 0; k <= db; ++k) a[static_cast<size_t>(k + shift)] -= c * b[static_cast<size_t>(k)];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

UPoly monic(UPoly p) {
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

UPoly squarefree_part(const UPoly& p) {
  UPoly g = gcd(p, derivative(p));
  return g.size() <= 1 ? p : quo(p, g);
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, derivative(p)};
  while (!seq.back().empty() && deg(seq.back()) > 0) {
    UPoly r = rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

int variations(const std::vector<UPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sign_at(s, x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

// Truncated products of dense coefficient vectors (length n).
UPoly mul_trunc(const UPoly& a, const UPoly& b, size_t n) {
  UPoly r(n);
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

UPoly recip_trunc(const UPoly& a, size_t n) {
  UPoly r(n);
  if (n == 0) return r;
  Rational inv0 = 1 / a[0];
  r[0] = inv0;
  for (size_t k = 1; k < n; ++k) {
    Rational acc(0);
    for (size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * r[k - j];
    r[k] = -inv0 * acc;
  }
  return r;
}

// Coefficients c_k(X) of P = sum_k c_k(X) Y^k.
std::vector<UPoly> y_coefficients(const Polynomial& P) {
  std::vector<UPoly> c(static_cast<size_t>(std::max(P.degree_in(1), 0) + 1));
  for (const auto& [alpha, v] : P.terms()) {
    auto& ck = c[alpha[1]];
    if (ck.size() <= alpha[0]) ck.resize(alpha[0] + 1);
    ck[alpha[0]] = v;
  }
  for (auto& ck : c) trim(ck);
  return c;
}

// Horner evaluation of sum_k c_k(X) y^k, truncated to n coefficients.
UPoly eval_in_y(const std::vector<UPoly>& c, const UPoly& y, size_t n) {
  UPoly acc(n);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul_trunc(acc, y, n);
    for (size_t i = 0; i < it->size() && i < n; ++i) acc[i] += (*it)[i];
  }
  return acc;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

// Resultant of a (degree m) and b (degree n) given by coefficient lists in Y.
Rational sylvester_resultant(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const size_t m = a.size() - 1, n = b.size() - 1;
  const size_t size = m + n;
  if (size == 0) return Rational(1);
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  for (size_t row = 0; row < n; ++row) {
    for (size_t k = 0; k <= m; ++k) s[row][row + k] = a[m - k];
  }
  for (size_t row = 0; row < m; ++row) {
    for (size_t k = 0; k <= n; ++k) s[n + row][row + k] = b[n - k];
  }
  return determinant(std::move(s));
}

// Interpolates values at x = 0, 1, ..., D (Newton divided differences).
UPoly interpolate(const std::vector<Rational>& values) {
  const size_t n = values.size();
  std::vector<Rational> dd = values;
  for (size_t level = 1; level < n; ++level) {
    for (size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / static_cast<long>(level);
      if (i == level) break;
    }
  }
  UPoly result{dd[n - 1]};
  for (size_t k = n - 1; k-- > 0;) {
    // result = result * (X - k) + dd[k]
    UPoly next(result.size() + 1);
    for (size_t i = 0; i < result.size(); ++i) {
      next[i + 1] += result[i];
      next[i] -= result[i] * static_cast<long>(k);
    }
    next[0] += dd[k];
    result = std::move(next);
  }
  trim(result);
  return result;
}

UPoly discriminant_dense(const Polynomial& P) {
  auto c = y_coefficients(P);
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) return {};
  int degx = 0;
  for (const auto& ck : c) degx = std::max(degx, deg(ck));
  const int bound = (2 * d - 1) * degx;
  std::vector<Rational> values;
  for (int x = 0; x <= bound; ++x) {
    Rational xv(x);
    std::vector<Rational> a, b;
    for (int k = 0; k <= d; ++k) a.push_back(eval(c[static_cast<size_t>(k)], xv));
    for (int k = 1; k <= d; ++k) b.push_back(a[static_cast<size_t>(k)] * k);
    values.push_back(sylvester_resultant(a, b));
  }
  return interpolate(values);
}

// Lower bound on the smallest root modulus of p, with p(0) != 0. Capped at `cap`.
Rational root_modulus_lower(const UPoly& p, const Rational& cap) {
  if (deg(p) <= 0) return cap;
  const Rational a0 = abs(p[0]);
  Rational maxc(0);
  for (size_t k = 1; k < p.size(); ++k) maxc = std::max(maxc, abs(p[k]));
  auto f = [&](const Rational& x) {
    Rational s(0), xp(1);
    for (size_t k = 1; k < p.size(); ++k) {
      xp *= x;
      s += abs(p[k]) * xp;
    }
    return s;
  };
  // every root z has a0 <= sum |p_k| |z|^k, so f(x) < a0 certifies |z| > x
  Rational lo = round_rational(a0 / (a0 + maxc), 24, Round::Down).to_rational();
  if (f(lo) >= a0) return lo;
  Rational hi = lo * 2;
  while (f(hi) < a0) {
    lo = hi;
    if (lo >= cap) return cap;
    hi *= 2;
  }
  for (int it = 0; it < 24; ++it) {
    Rational mid = (lo + hi) / 2;
    if (f(mid) < a0) lo = mid; else hi = mid;
  }
  return std::min(lo, cap);
}

UPoly strip_x_power(UPoly p) {
  size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
  return p;
}

Rational abs_sum_at(const UPoly& p, const Rational& r, size_t from = 0) {
  Rational s(0), rp(1);
  for (size_t k = 0; k < p.size(); ++k) {
    if (k >= from) s += abs(p[k]) * rp;
    rp *= r;
  }
  return s;
}

// Rational upper bound of q^(1/k), q >= 0.
Rational root_up(const Rational& q, unsigned k) {
  if (q == 0) return Rational(0);
  if (k == 1) return q;
  double guess = std::pow(q.get_d(), 1.0 / static_cast<double>(k)) * (1 + 1e-9);
  Rational x = round_rational(Rational(guess), 30, Round::Up).to_rational();
  while (ian::pow(x, k) < q) x = round_rational(x * Rational(1025, 1024), 30, Round::Up).to_rational();
  return x;
}

}  // namespace

Polynomial y_discriminant(const Polynomial& P) {
  if (P.arity() != 2) throw Error(ErrorKind::ArityMismatch, "defining polynomial must have arity 2");
  return from_dense(discriminant_dense(P));
}

AlgebraicSeriesDef make_algebraic_def(Polynomial P, Rational y0) {
  if (P.arity() != 2) throw Error(ErrorKind::ArityMismatch, "defining polynomial must have arity 2");
  const Rational at0[2] = {Rational(0), y0};
  if (P.evaluate(at0) != 0) throw Error(ErrorKind::InconsistentDefinition, "P(0, y0) != 0");
  if (P.derivative(1).evaluate(at0) == 0) throw Error(ErrorKind::NotSimpleRoot, "dP/dY(0, y0) = 0");
  if (discriminant_dense(P).empty()) {
    throw Error(ErrorKind::DegenerateDiscriminant, "P is not squarefree in Y");
  }
  return AlgebraicSeriesDef{std::move(P), std::move(y0)};
}

std::vector<Rational> lift_algebraic(const AlgebraicSeriesDef& def, int N) {
  const size_t target = static_cast<size_t>(N) + 1;
  auto c = y_coefficients(def.P);
  std::vector<UPoly> cy;  // coefficients of dP/dY
  for (size_t k = 1; k < c.size(); ++k) {
    UPoly t = c[k];
    for (auto& v : t) v *= static_cast<long>(k);
    cy.push_back(std::move(t));
  }
  UPoly y{def.y0};
  size_t prec = 1;
  while (prec < target) {
    prec = std::min(2 * prec, target);
    y.resize(prec);
    UPoly v = eval_in_y(c, y, prec);
    UPoly w = eval_in_y(cy, y, prec);
    UPoly step = mul_trunc(v, recip_trunc(w, prec), prec);
    for (size_t i = 0; i < prec; ++i) y[i] -= step[i];
  }
  y.resize(target);
  return y;
}

RadiusBound radius_bound(const AlgebraicSeriesDef& def) {
  const Rational cap(4);  // radii are capped at 2 = cap/2
  auto c = y_coefficients(def.P);
  const size_t d = c.size() - 1;
  const UPoly& lc = c[d];
  if (lc.empty() || lc[0] == 0) {
    throw Error(ErrorKind::MajorantUnavailable, "leading coefficient in Y vanishes at X = 0");
  }
  UPoly res = discriminant_dense(def.P);
  if (res.empty()) throw Error(ErrorKind::DegenerateDiscriminant, "P is not squarefree in Y");
  // repeated factors only weaken the Cauchy bound; the root set is unchanged
  Rational R = std::min(root_modulus_lower(squarefree_part(strip_x_power(res)), cap),
                        root_modulus_lower(squarefree_part(lc), cap));
  Rational r = round_rational(R / 2, 24, Round::Down).to_rational();

  Rational lc_low = abs(lc[0]) - abs_sum_at(lc, r, 1);
  Rational best(0);
  for (size_t k = 1; k <= d; ++k) {
    Rational q = abs_sum_at(c[d - k], r) / lc_low;
    if (k == d) q /= 2;
    best = std::max(best, root_up(q, static_cast<unsigned>(k)));
  }
  Rational M = round_rational(2 * best, 24, Round::Up).to_rational();
  return RadiusBound{M, r};
}

SeriesExpr algebraic_series(const AlgebraicSeriesDef& def) {
  AlgebraicSeriesDef checked = make_algebraic_def(def.P, def.y0);
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Alg;
  n->arity = 1;
  n->alg = std::make_shared<const AlgebraicSeriesDef>(std::move(checked));
  return SeriesExpr(n);
}

int sturm_count(const Polynomial& p, const Rational& a, const Rational& b) {
  UPoly d = to_dense(p);
  if (d.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
  auto seq = sturm_sequence(squarefree_part(d));
  return variations(seq, a) - variations(seq, b);
}

std::vector<IsolatingInterval> isolate_real_roots(const Polynomial& p) {
  UPoly d = to_dense(p);
  if (d.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
  UPoly s = squarefree_part(d);
  std::vector<IsolatingInterval> out;
  if (deg(s) <= 0) return out;
  auto seq = sturm_sequence(s);
  Rational bound(0);
  for (size_t k = 0; k + 1 < s.size(); ++k) bound = std::max(bound, Rational(abs(s[k] / s.back())));
  bound += 1;

  // work list of half-open intervals (lo, hi], processed left to right
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int count = variations(seq, lo) - variations(seq, hi);
    if (count == 0) continue;
    if (count == 1) {
      if (sign_at(s, hi) == 0) {
        out.push_back({hi, hi});
        continue;
      }
      if (sign_at(s, lo) != 0) {
        out.push_back({lo, hi});
        continue;
      }
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return out;
}

Ball refine_root(const Polynomial& p, const IsolatingInterval& iv, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  UPoly d = to_dense(p);
  if (d.empty()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
  UPoly s = squarefree_part(d);
  Rational lo = iv.lo, hi = iv.hi;
  if (lo > hi) throw Error(ErrorKind::NotIsolating, "empty interval");
  const long prec = std::max(64L, -floor_log2(eps) + 16 + std::max(0L, floor_log2(abs(hi) + abs(lo) + 1)));
  auto exact = [&](const Rational& x) { return Ball::enclosing(x, x, prec); };
  int slo = sign_at(s, lo), shi = sign_at(s, hi);
  if (slo == 0) return exact(lo);
  if (shi == 0) return exact(hi);
  if (slo == shi) throw Error(ErrorKind::NotIsolating, "no sign change on the interval");
  auto seq = sturm_sequence(s);
  if (variations(seq, lo) - variations(seq, hi) != 1) {
    throw Error(ErrorKind::NotIsolating, "interval contains more than one root");
  }
  while (hi - lo > eps) {
    Rational mid = (lo + hi) / 2;
    int sm = sign_at(s, mid);
    if (sm == 0) return exact(mid);
    if (sm == slo) lo = mid; else hi = mid;
  }
  return Ball::enclosing(lo, hi, prec);
}

}  // namespace ian
