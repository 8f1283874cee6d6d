#include "ian/weierstrass.hpp"

#include <algorithm>
#include <functional>

#include "ian/error.hpp"
#include "ian/node.hpp"

namespace ian {

namespace {

std::shared_ptr<Node> structural_node(NodeKind kind, int arity, std::vector<SeriesExpr> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->arity = arity;
  n->exact = std::all_of(children.begin(), children.end(), [](const SeriesExpr& c) { return c.is_exact(); });
  n->children = std::move(children);
  return n;
}

bool has_zero_constant_term(const SeriesExpr& g) {
  const MultiIndex zero(g.arity());
  if (g.is_exact()) return exact_trunc(g, 0)->find(zero) == nullptr;
  // a ball can only certify zero when it is exactly zero
  const Ball* c = ball_trunc(g, 64, 0)->find(zero);
  return c == nullptr;
}

Trunc<Rational> with_order(Trunc<Rational> t, int order) {
  t.order = order;
  return t;
}

}  // namespace

SeriesExpr compose_series(const SeriesExpr& e, std::vector<SeriesExpr> g) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  if (static_cast<int>(g.size()) != e.arity() || g.empty()) {
    throw Error(ErrorKind::ArityMismatch, "composition needs one series per variable of the outer series");
  }
  const int m = g.front().arity();
  for (const auto& gj : g) {
    if (!gj.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
    if (gj.arity() != m) throw Error(ErrorKind::ArityMismatch, "inner series of different arity");
    if (!has_zero_constant_term(gj)) {
      throw Error(ErrorKind::NonvanishingSubstitution, "inner series must have zero constant term");
    }
  }
  std::vector<SeriesExpr> children{e};
  children.insert(children.end(), g.begin(), g.end());
  return SeriesExpr(structural_node(NodeKind::Compose, m, std::move(children)));
}

SeriesExpr inverse_series(const SeriesExpr& e) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  if (e.arity() != 1) throw Error(ErrorKind::ArityMismatch, "inverse needs a univariate series");
  if (!e.is_exact()) throw Error(ErrorKind::Unsupported, "inverse of a series with certified coefficients");
  auto t = exact_trunc(e, 1);
  if (t->find(MultiIndex{0}) != nullptr) throw Error(ErrorKind::NotInvertible, "f(0) != 0");
  if (t->find(MultiIndex{1}) == nullptr) throw Error(ErrorKind::NotInvertible, "f'(0) = 0");
  return SeriesExpr(structural_node(NodeKind::Inverse, 1, {e}));
}

std::vector<SeriesExpr> implicit_series(std::vector<SeriesExpr> F) {
  const int m = static_cast<int>(F.size());
  if (m == 0) throw Error(ErrorKind::ArityMismatch, "empty implicit system");
  const int total = F.front().arity();
  const int n = total - m;
  if (n < 0) throw Error(ErrorKind::ArityMismatch, "implicit system has more equations than variables");
  for (const auto& Fi : F) {
    if (!Fi.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
    if (Fi.arity() != total) throw Error(ErrorKind::ArityMismatch, "equations of different arity");
    if (!Fi.is_exact()) throw Error(ErrorKind::Unsupported, "implicit system with certified coefficients");
    if (exact_trunc(Fi, 0)->find(MultiIndex(total)) != nullptr) {
      throw Error(ErrorKind::InconsistentDefinition, "F(0) != 0");
    }
  }
  // J_ij = dF_i/dY_j (0), inverted by Gauss-Jordan over Q
  std::vector<std::vector<Rational>> J(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i) {
    auto t = exact_trunc(F[static_cast<size_t>(i)], 1);
    for (int j = 0; j < m; ++j) {
      const Rational* c = t->find(MultiIndex::unit(total, n + j));
      J[static_cast<size_t>(i)][static_cast<size_t>(j)] = c ? *c : Rational(0);
    }
  }
  std::vector<std::vector<Rational>> inv(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  for (size_t col = 0; col < static_cast<size_t>(m); ++col) {
    size_t piv = col;
    while (piv < J.size() && J[piv][col] == 0) ++piv;
    if (piv == J.size()) throw Error(ErrorKind::SingularJacobian, "dF/dY(0) is singular");
    std::swap(J[piv], J[col]);
    std::swap(inv[piv], inv[col]);
    Rational p = J[col][col];
    for (auto& v : J[col]) v /= p;
    for (auto& v : inv[col]) v /= p;
    for (size_t r = 0; r < J.size(); ++r) {
      if (r == col || J[r][col] == 0) continue;
      Rational factor = J[r][col];
      for (size_t k = 0; k < J.size(); ++k) {
        J[r][k] -= factor * J[col][k];
        inv[r][k] -= factor * inv[col][k];
      }
    }
  }
  auto sys = std::make_shared<ImplicitSystem>();
  sys->F = F;
  sys->n = n;
  sys->m = m;
  sys->jacobian_inverse = std::move(inv);
  std::vector<SeriesExpr> out;
  for (int j = 0; j < m; ++j) {
    auto node = structural_node(NodeKind::Implicit, n, F);
    node->index = j;
    node->system = sys;
    out.emplace_back(node);
  }
  return out;
}

std::pair<SeriesExpr, SeriesExpr> complexify(const SeriesExpr& e) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  if (2 * e.arity() > kMaxArity) throw Error(ErrorKind::ArityMismatch, "complexification exceeds the arity limit");
  return {SeriesExpr(structural_node(NodeKind::Re, 2 * e.arity(), {e})),
          SeriesExpr(structural_node(NodeKind::Im, 2 * e.arity(), {e}))};
}

// ---- Newton solvers --------------------------------------------------------

Trunc<Rational> inverse_trunc(const Node& node, int N) {
  const ExactField f;
  auto ft = exact_trunc(node.children[0], N + 1);
  const Rational c1 = *ft->find(MultiIndex{1});
  Trunc<Rational> g(1, std::min(N, 1));
  if (N >= 1) g.terms.emplace(MultiIndex{1}, 1 / c1);
  const Trunc<Rational> df = kernels::deriv(f, *ft, 0, N);
  int k = 1;
  while (k < N) {
    const int T = std::min(2 * k + 1, N);
    Trunc<Rational> gT = with_order(g, T);
    std::vector<Trunc<Rational>> args{gT};
    Trunc<Rational> fg = kernels::substitute(f, *ft, std::span<const Trunc<Rational>>(args), T);
    Trunc<Rational> dg = kernels::substitute(f, df, std::span<const Trunc<Rational>>(args), T);
    Trunc<Rational> residual = kernels::sub(f, fg, kernels::coordinate(f, 1, 0, T), T);
    Trunc<Rational> step = kernels::mul(f, residual, kernels::recip(f, dg, T), T);
    g = kernels::sub(f, gT, step, T);
    k = T;
  }
  g.order = N;
  return g;
}

std::shared_ptr<const std::vector<Trunc<Rational>>> implicit_solution(ImplicitSystem& sys, int N) {
  {
    std::lock_guard lock(sys.mu);
    if (sys.solution && !sys.solution->empty() && sys.solution->front().order >= N) return sys.solution;
  }
  const ExactField f;
  const int n = sys.n, m = sys.m;
  std::vector<Trunc<Rational>> Ft, dF;  // dF[i*m+j] = dF_i/dY_j
  for (int i = 0; i < m; ++i) {
    Ft.push_back(*exact_trunc(sys.F[static_cast<size_t>(i)], N + 1));
    for (int j = 0; j < m; ++j) dF.push_back(kernels::deriv(f, Ft.back(), n + j, N));
  }
  std::vector<Trunc<Rational>> G(static_cast<size_t>(m), Trunc<Rational>(n, 0));
  int k = 0;
  while (k < N) {
    const int T = std::min(2 * k + 1, N);
    std::vector<Trunc<Rational>> args;
    for (int i = 0; i < n; ++i) args.push_back(kernels::coordinate(f, n, i, T));
    for (auto& g : G) args.push_back(with_order(g, T));
    const std::span<const Trunc<Rational>> span(args);
    std::vector<Trunc<Rational>> rhs;
    std::vector<std::vector<Trunc<Rational>>> J(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      rhs.push_back(kernels::substitute(f, Ft[static_cast<size_t>(i)], span, T));
      for (int j = 0; j < m; ++j) {
        J[static_cast<size_t>(i)].push_back(kernels::substitute(f, dF[static_cast<size_t>(i * m + j)], span, T));
      }
    }
    // Gauss-Jordan with unit pivots
    const MultiIndex zero(n);
    for (size_t col = 0; col < static_cast<size_t>(m); ++col) {
      size_t piv = col;
      while (piv < J.size() && J[piv][col].find(zero) == nullptr) ++piv;
      if (piv == J.size()) throw Error(ErrorKind::SingularJacobian, "Jacobian lost invertibility");
      std::swap(J[piv], J[col]);
      std::swap(rhs[piv], rhs[col]);
      Trunc<Rational> inv = kernels::recip(f, J[col][col], T);
      for (auto& entry : J[col]) entry = kernels::mul(f, entry, inv, T);
      rhs[col] = kernels::mul(f, rhs[col], inv, T);
      for (size_t r = 0; r < J.size(); ++r) {
        if (r == col) continue;
        Trunc<Rational> factor = J[r][col];
        if (factor.terms.empty()) continue;
        for (size_t c = 0; c < J.size(); ++c) {
          J[r][c] = kernels::sub(f, J[r][c], kernels::mul(f, factor, J[col][c], T), T);
        }
        rhs[r] = kernels::sub(f, rhs[r], kernels::mul(f, factor, rhs[col], T), T);
      }
    }
    for (int j = 0; j < m; ++j) {
      G[static_cast<size_t>(j)] =
          kernels::sub(f, with_order(G[static_cast<size_t>(j)], T), rhs[static_cast<size_t>(j)], T);
    }
    k = T;
  }
  for (auto& g : G) g.order = N;
  auto result = std::make_shared<const std::vector<Trunc<Rational>>>(std::move(G));
  std::lock_guard lock(sys.mu);
  if (!sys.solution || sys.solution->front().order < N) sys.solution = result;
  return result;
}

// ---- Weierstrass division ----------------------------------------------------

RegularityReport regular_order(const TruncatedSeries& f) {
  const int n = f.arity;
  if (n == 0) {
    const auto& c = f.at(MultiIndex(0));
    bool zero = std::holds_alternative<Rational>(c) ? std::get<Rational>(c) == 0 : std::get<Ball>(c).contains_zero();
    return zero ? RegularityReport{false, 0} : RegularityReport{true, 0};
  }
  for (int k = 0; k <= f.order; ++k) {
    const auto& c = f.at(MultiIndex::unit(n, n - 1, static_cast<std::uint32_t>(k)));
    bool zero = std::holds_alternative<Rational>(c) ? std::get<Rational>(c) == 0 : std::get<Ball>(c).contains_zero();
    if (!zero) return {true, k};
  }
  return {false, 0};
}

bool Window::contains(const MultiIndex& alpha) const {
  const int n = alpha.arity();
  if (n == 0) return true;
  const int last = static_cast<int>(alpha[n - 1]);
  return static_cast<int>(alpha.degree()) - last <= nx && last <= nn;
}

namespace {

using Pred = std::function<bool(const MultiIndex&)>;

Trunc<Rational> mul_in(const Trunc<Rational>& a, const Trunc<Rational>& b, const Pred& in) {
  Trunc<Rational> r(a.arity, std::max(a.order, b.order));
  for (const auto& [alpha, ca] : a.terms) {
    for (const auto& [beta, cb] : b.terms) {
      MultiIndex gamma = alpha + beta;
      if (!in(gamma)) continue;
      auto [it, inserted] = r.terms.try_emplace(gamma, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(r.terms, [](const auto& kv) { return kv.second == 0; });
  return r;
}

// Inverse of a unit u restricted to the down-set `in`, whose members are
// listed in `support` in graded order.
Trunc<Rational> recip_in(const Trunc<Rational>& u, const std::vector<MultiIndex>& support) {
  Trunc<Rational> r(u.arity, u.order);
  const Rational inv0 = 1 / *u.find(MultiIndex(u.arity));
  for (const auto& alpha : support) {
    if (alpha.degree() == 0) {
      r.terms.emplace(alpha, inv0);
      continue;
    }
    Rational acc(0);
    for (const auto& [beta, c] : u.terms) {
      if (beta.degree() == 0) continue;
      if (beta.degree() > alpha.degree()) break;
      if (!beta.divides(alpha)) continue;
      if (const Rational* prev = r.find(alpha - beta)) acc += c * *prev;
    }
    if (acc != 0) r.terms.emplace_hint(r.terms.end(), alpha, -inv0 * acc);
  }
  return r;
}

Window resolve(Window w, int d) {
  if (w.nn < 0) w.nn = d + 8;
  if (w.nx < 0) throw Error(ErrorKind::InvalidArgument, "window order must be >= 0");
  return w;
}

void check_regular(const Trunc<Rational>& f, int d) {
  const int n = f.arity;
  for (int k = 0; k <= d; ++k) {
    const Rational* c = f.find(MultiIndex::unit(n, n - 1, static_cast<std::uint32_t>(k)));
    const bool zero = c == nullptr;
    if (k < d && !zero) throw Error(ErrorKind::NotRegular, "f(0, X_n) has order " + std::to_string(k) + " < d");
    if (k == d && zero) throw Error(ErrorKind::NotRegular, "f(0, X_n) does not have order d");
  }
}

}  // namespace

Trunc<Rational> window_mul(const Trunc<Rational>& a, const Trunc<Rational>& b, const Window& w) {
  return mul_in(a, b, [&](const MultiIndex& alpha) { return w.contains(alpha); });
}

DivisionResult wdiv(const SeriesExpr& f, const SeriesExpr& g, int d, Window window, int extra_passes) {
  if (!f.valid() || !g.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  const int n = f.arity();
  if (n < 1 || g.arity() != n) throw Error(ErrorKind::ArityMismatch, "division needs series of equal arity >= 1");
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "d must be >= 0");
  if (!f.is_exact() || !g.is_exact()) throw Error(ErrorKind::Unsupported, "division of certified series");
  window = resolve(window, d);
  const int A = n == 1 ? 0 : window.nx;
  const int Nn = window.nn;
  // staircase: X'-degree j keeps X_n-degree up to cap(j)
  auto cap = [&](int j) { return Nn + d * (A - j + 1); };
  Pred in = [&](const MultiIndex& alpha) {
    const int last = static_cast<int>(alpha[n - 1]);
    const int j = static_cast<int>(alpha.degree()) - last;
    return j <= A && last <= cap(j);
  };
  // largest total degree in the staircase (at j = 0 when d >= 1, j = A when d = 0)
  const int total = std::max(cap(0), A + cap(A));
  auto ft = exact_trunc(f, total);
  auto gt = exact_trunc(g, total);
  check_regular(*ft, d);

  std::vector<MultiIndex> support;
  for_each_monomial(n, total, [&](const MultiIndex& alpha) {
    if (in(alpha)) support.push_back(alpha);
  });

  Trunc<Rational> U(n, total), B(n, total), G(n, total);
  for (const auto& [alpha, c] : ft->terms) {
    if (!in(alpha)) continue;
    if (static_cast<int>(alpha[n - 1]) >= d) {
      MultiIndex beta = alpha;
      beta.set(n - 1, alpha[n - 1] - static_cast<std::uint32_t>(d));
      U.terms.emplace(beta, c);
    } else {
      B.terms.emplace(alpha, c);
    }
  }
  for (const auto& [alpha, c] : gt->terms) {
    if (in(alpha)) G.terms.emplace(alpha, c);
  }
  const Trunc<Rational> Uinv = recip_in(U, support);

  auto split = [&](const Trunc<Rational>& s, Trunc<Rational>& quotient, Trunc<Rational>& rest) {
    quotient = Trunc<Rational>(n, total);
    rest = Trunc<Rational>(n, total);
    for (const auto& [alpha, c] : s.terms) {
      if (static_cast<int>(alpha[n - 1]) >= d) {
        MultiIndex beta = alpha;
        beta.set(n - 1, alpha[n - 1] - static_cast<std::uint32_t>(d));
        quotient.terms.emplace(beta, c);
      } else {
        rest.terms.emplace(alpha, c);
      }
    }
  };

  Trunc<Rational> h(n, total), quotient, rest;
  const int passes = A + 2 + extra_passes;
  for (int pass = 0; pass < passes; ++pass) {
    Trunc<Rational> s = G;
    for (const auto& [alpha, c] : mul_in(B, h, in).terms) {
      auto [it, inserted] = s.terms.try_emplace(alpha, -c);
      if (!inserted) it->second -= c;
    }
    std::erase_if(s.terms, [](const auto& kv) { return kv.second == 0; });
    split(s, quotient, rest);
    h = mul_in(Uinv, quotient, in);
  }

  DivisionResult out;
  out.d = d;
  out.window = window;
  out.h = Trunc<Rational>(n, A + Nn);
  for (const auto& [alpha, c] : h.terms) {
    if (window.contains(alpha) || n == 1) {
      if (static_cast<int>(alpha[n - 1]) <= Nn) out.h.terms.emplace(alpha, c);
    }
  }
  out.remainder = Trunc<Rational>(n, A + d);
  out.r.assign(static_cast<size_t>(d), Trunc<Rational>(n - 1, A));
  for (const auto& [alpha, c] : rest.terms) {
    if (static_cast<int>(alpha.degree()) - static_cast<int>(alpha[n - 1]) > A) continue;
    out.remainder.terms.emplace(alpha, c);
    out.r[alpha[n - 1]].terms.emplace(alpha.erase(n - 1), c);
  }
  return out;
}

PreparationResult wprep(const SeriesExpr& f, int d, Window window) {
  const int n = f.arity();
  window = resolve(window, d);
  Polynomial xd(n);
  xd.add_term(MultiIndex::unit(n, n - 1, static_cast<std::uint32_t>(d)), Rational(1));
  DivisionResult div = wdiv(f, poly(xd), d, window);

  PreparationResult out;
  out.d = d;
  out.window = window;
  const int A = n == 1 ? 0 : window.nx;
  out.P = Trunc<Rational>(n, A + d);
  out.P.terms.emplace(MultiIndex::unit(n, n - 1, static_cast<std::uint32_t>(d)), Rational(1));
  for (const auto& [alpha, c] : div.remainder.terms) out.P.terms.emplace(alpha, -c);
  out.a.assign(static_cast<size_t>(d), Trunc<Rational>(n - 1, A));
  for (const auto& [alpha, c] : div.remainder.terms) out.a[alpha[n - 1]].terms.emplace(alpha.erase(n - 1), -c);

  std::vector<MultiIndex> support;
  Window w = window;
  if (n == 1) w.nx = 0;
  for_each_monomial(n, A + w.nn, [&](const MultiIndex& alpha) {
    if (w.contains(alpha)) support.push_back(alpha);
  });
  out.u = recip_in(div.h, support);
  return out;
}

}  // namespace ian
