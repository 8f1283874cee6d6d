#include "ian/majorant.hpp"

#include <algorithm>
#include <functional>

#include "ian/algebraic.hpp"
#include "ian/error.hpp"
#include "ian/node.hpp"

namespace ian {

namespace {

constexpr long kSnapBits = 24;
// Fraction of the outer radius (or of |c| for reciprocals) that inner bounds may use.
const Rational kTheta(7, 8);

Rational snap_down(const Rational& q) { return round_rational(q, kSnapBits, Round::Down).to_rational(); }
Rational snap_up(const Rational& q) { return round_rational(q, kSnapBits, Round::Up).to_rational(); }
Rational up64(const Rational& q) { return round_rational(q, 64, Round::Up).to_rational(); }

Rational pow_up(const Rational& t, unsigned k) {
  Rational result(1), base = t;
  while (k) {
    if (k & 1u) result = up64(result * base);
    k >>= 1;
    if (k) base = up64(base * base);
  }
  return result;
}

Majorant make(const Rational& M, std::vector<Rational> radii) { return Majorant{snap_up(M), std::move(radii)}; }

int low_order_for(int arity) {
  if (arity <= 2) return 16;
  if (arity == 3) return 10;
  if (arity <= 5) return 6;
  return 3;
}

using Skip = std::function<bool(const MultiIndex&)>;

// Upper bound of sum |g_alpha| rho^alpha over alpha with |alpha| >= min_degree
// (and not skipped): exact low-order coefficients plus the majorant tail.
// Empty when rho is not strictly inside the majorant radii.
std::optional<Rational> abs_sum_bound(const SeriesExpr& g, const Majorant& mg, std::span<const Rational> rho,
                                      unsigned min_degree, const Skip& skip = nullptr) {
  const int n = g.arity();
  auto weight = [&](const MultiIndex& alpha) {
    Rational w(1);
    for (int i = 0; i < n; ++i) {
      if (alpha[i]) w *= ian::pow(rho[static_cast<size_t>(i)], alpha[i]);
    }
    return w;
  };
  auto wanted = [&](const MultiIndex& alpha) { return alpha.degree() >= min_degree && !(skip && skip(alpha)); };
  if (g.kind() == NodeKind::Poly) {
    Rational s(0);
    for (const auto& [alpha, c] : g.node().poly.terms()) {
      if (wanted(alpha)) s += abs(c) * weight(alpha);
    }
    return s;
  }
  for (int i = 0; i < n; ++i) {
    if (rho[static_cast<size_t>(i)] >= mg.radii[static_cast<size_t>(i)]) return std::nullopt;
  }
  const int K = low_order_for(n);
  // ball upper bounds keep operand sizes fixed even for exact g, whose
  // rationals can grow quickly with the degree
  Rational s(0);
  auto t = ball_trunc(g, 64, K);
  for (const auto& [alpha, c] : t->terms) {
    if (static_cast<int>(alpha.degree()) > K) break;
    if (wanted(alpha)) s = up64(s + up64(c.abs_upper() * weight(alpha)));
  }
  return s + tail_bound(mg, rho, K);
}

// Scales start down by 3/4 (at most 64 times) until pred holds, then refines
// the scale by bisection against the last failing one.
std::optional<std::vector<Rational>> shrink(const std::vector<Rational>& start,
                                            const std::function<bool(const std::vector<Rational>&)>& pred) {
  auto box = [&](const Rational& c) {
    std::vector<Rational> b;
    for (const auto& s : start) b.push_back(snap_down(c * s));
    return b;
  };
  Rational c(1), failing(0);
  bool found = false;
  for (int k = 0; k <= 64; ++k) {
    if (pred(box(c))) {
      found = true;
      break;
    }
    failing = c;
    c *= Rational(3, 4);
  }
  if (!found) return std::nullopt;
  if (failing > 0) {
    Rational lo = c, hi = failing;
    for (int it = 0; it < 8; ++it) {
      Rational mid = (lo + hi) / 2;
      if (pred(box(mid))) lo = mid; else hi = mid;
    }
    c = lo;
  }
  return box(c);
}

Rational constant_abs_lower(const SeriesExpr& e) {
  const MultiIndex zero(e.arity());
  if (e.is_exact()) {
    const Rational* c = exact_trunc(e, 0)->find(zero);
    return c ? abs(*c) : Rational(0);
  }
  Rational best(0);
  for (long prec = 64; prec <= 256 && best == 0; prec *= 2) {
    const Ball* c = ball_trunc(e, prec, 0)->find(zero);
    if (c) best = c->abs_lower();
  }
  return best;
}

[[noreturn]] void unavailable(const char* what) { throw Error(ErrorKind::MajorantUnavailable, what); }

Majorant compute(const SeriesExpr& e, const std::vector<Rational>& focus);

Majorant child_majorant(const SeriesExpr& c, const std::vector<Rational>& focus) { return majorant_of(c, focus); }

std::vector<Rational> scaled(const std::vector<Rational>& v, const Rational& q) {
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(x * q);
  return out;
}

Majorant substitution_rule(const SeriesExpr& outer, const std::vector<Rational>& focus, std::vector<Rational> start,
                           const std::function<std::optional<Rational>(size_t, const std::vector<Rational>&)>& H,
                           size_t m) {
  std::vector<Rational> outer_focus;
  for (size_t j = 0; j < m; ++j) {
    auto h = H(j, focus);
    outer_focus.push_back(h ? *h : Rational(0));
  }
  const Majorant mo = child_majorant(outer, outer_focus);
  std::vector<Rational> best_h(m);
  auto pred = [&](const std::vector<Rational>& rho) {
    for (size_t j = 0; j < m; ++j) {
      auto h = H(j, rho);
      if (!h || *h > kTheta * mo.radii[j]) return false;
      best_h[j] = *h;
    }
    return true;
  };
  auto rho = shrink(start, pred);
  if (!rho) unavailable("substitution: inner series do not fit inside the outer radii");
  pred(*rho);
  Rational M = mo.M;
  for (size_t j = 0; j < m; ++j) M /= 1 - best_h[j] / mo.radii[j];
  return make(M, *rho);
}

Majorant compute(const SeriesExpr& e, const std::vector<Rational>& focus) {
  const Node& nd = e.node();
  const int n = nd.arity;
  const auto& ch = nd.children;
  switch (nd.kind) {
    case NodeKind::Poly: {
      std::vector<Rational> box;
      for (const auto& f : focus) box.push_back(snap_up(std::max(Rational(2), Rational(2 * f))));
      Rational M(0);
      for (const auto& [alpha, c] : nd.poly.terms()) {
        Rational v = abs(c);
        for (int i = 0; i < n; ++i) {
          if (alpha[i]) v *= ian::pow(box[static_cast<size_t>(i)], alpha[i]);
        }
        M = std::max(M, v);
      }
      return make(M, std::move(box));
    }
    case NodeKind::Alg: {
      RadiusBound rb = radius_bound(*nd.alg);
      return make(rb.M, {rb.r});
    }
    case NodeKind::Add:
      return add_rule(child_majorant(ch[0], focus), child_majorant(ch[1], focus));
    case NodeKind::Scale: {
      Majorant m = child_majorant(ch[0], focus);
      return make(abs(nd.scalar) * m.M, m.radii);
    }
    case NodeKind::Mul: {
      const auto f2 = scaled(focus, 2);
      Majorant a = child_majorant(ch[0], f2), b = child_majorant(ch[1], f2);
      std::vector<Rational> r;
      for (int i = 0; i < n; ++i) {
        r.push_back(std::min(a.radii[static_cast<size_t>(i)], b.radii[static_cast<size_t>(i)]) / 2);
      }
      return make(a.M * b.M, std::move(r));
    }
    case NodeKind::Recip: {
      const Majorant mc = child_majorant(ch[0], focus);
      const Rational c = constant_abs_lower(ch[0]);
      if (c == 0) unavailable("reciprocal: constant term not bounded away from 0");
      Rational H;
      auto pred = [&](const std::vector<Rational>& rho) {
        auto h = abs_sum_bound(ch[0], mc, rho, 1);
        if (!h || *h > kTheta * c) return false;
        H = *h;
        return true;
      };
      auto rho = shrink(mc.radii, pred);
      if (!rho) unavailable("reciprocal: shrink search failed");
      pred(*rho);
      return make(1 / (c - H), *rho);
    }
    case NodeKind::SubstPoly: {
      std::vector<Rational> start;
      for (const auto& f : focus) start.push_back(std::max(Rational(1), Rational(2 * f)));
      auto H = [&](size_t j, const std::vector<Rational>& rho) -> std::optional<Rational> {
        return nd.polys[j].abs_sum(rho, true);
      };
      return substitution_rule(ch[0], focus, start, H, nd.polys.size());
    }
    case NodeKind::Compose: {
      const size_t m = ch.size() - 1;
      std::vector<Majorant> mg;
      for (size_t j = 1; j < ch.size(); ++j) mg.push_back(child_majorant(ch[j], focus));
      std::vector<Rational> start(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        Rational s = mg[0].radii[static_cast<size_t>(i)];
        for (const auto& g : mg) s = std::min(s, g.radii[static_cast<size_t>(i)]);
        start[static_cast<size_t>(i)] = s;
      }
      auto H = [&](size_t j, const std::vector<Rational>& rho) {
        return abs_sum_bound(ch[j + 1], mg[j], rho, 1);
      };
      return substitution_rule(ch[0], focus, start, H, m);
    }
    case NodeKind::Translate: {
      std::vector<Rational> f;
      for (int i = 0; i < n; ++i) f.push_back(abs(nd.point[static_cast<size_t>(i)]) + focus[static_cast<size_t>(i)]);
      Majorant mc = child_majorant(ch[0], f);
      for (int i = 0; i < n; ++i) {
        const Rational& a = nd.point[static_cast<size_t>(i)];
        if (a != 0 && abs(a) >= mc.radii[static_cast<size_t>(i)]) {
          mc = *nd.child_majorant;
          break;
        }
      }
      return translate_rule(mc, nd.point);
    }
    case NodeKind::Antider: {
      Majorant m = child_majorant(ch[0], focus);
      return make(m.M * m.radii[static_cast<size_t>(nd.index)], m.radii);
    }
    case NodeKind::Deriv: {
      std::vector<Rational> f = focus;
      f[static_cast<size_t>(nd.index)] *= 2;
      Majorant m = child_majorant(ch[0], f);
      Rational M = m.M / m.radii[static_cast<size_t>(nd.index)];
      m.radii[static_cast<size_t>(nd.index)] /= 2;
      return make(M, m.radii);
    }
    case NodeKind::Restrict0: {
      std::vector<Rational> f = focus;
      f.insert(f.begin() + nd.index, Rational(0));
      Majorant m = child_majorant(ch[0], f);
      m.radii.erase(m.radii.begin() + nd.index);
      return m;
    }
    case NodeKind::Permute: {
      std::vector<Rational> f(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) f[static_cast<size_t>(nd.perm[static_cast<size_t>(i)])] = focus[static_cast<size_t>(i)];
      Majorant m = child_majorant(ch[0], f);
      std::vector<Rational> r;
      for (int i = 0; i < n; ++i) r.push_back(m.radii[static_cast<size_t>(nd.perm[static_cast<size_t>(i)])]);
      return make(m.M, std::move(r));
    }
    case NodeKind::Re:
    case NodeKind::Im: {
      const int h = n / 2;
      std::vector<Rational> f;
      for (int j = 0; j < h; ++j) {
        f.push_back(2 * std::max(focus[static_cast<size_t>(j)], focus[static_cast<size_t>(h + j)]));
      }
      Majorant m = child_majorant(ch[0], f);
      std::vector<Rational> r;
      for (int k = 0; k < 2; ++k) {
        for (int j = 0; j < h; ++j) r.push_back(m.radii[static_cast<size_t>(j)] / 2);
      }
      return make(m.M * pow2(h), std::move(r));
    }
    case NodeKind::Inverse: {
      const Majorant mf = child_majorant(ch[0], {Rational(0)});
      const Rational c1 = abs(*exact_trunc(ch[0], 1)->find(MultiIndex{1}));
      std::optional<Majorant> best;
      for (int k = 0; k < 16; ++k) {
        Rational y0 = snap_down(mf.radii[0] * kTheta * ian::pow(Rational(3, 4), static_cast<unsigned>(k)));
        std::vector<Rational> rho{y0};
        auto phi = abs_sum_bound(ch[0], mf, rho, 2);
        if (!phi) continue;
        Rational x0 = snap_down(c1 * y0 - *phi);
        if (x0 <= 0) continue;
        if (!best || x0 > best->radii[0]) best = make(y0, {x0});
      }
      if (!best) unavailable("inverse: no admissible disc found");
      return *best;
    }
    case NodeKind::Implicit: {
      const ImplicitSystem& sys = *nd.system;
      const int nx = sys.n, m = sys.m;
      std::vector<Rational> f = focus;
      f.resize(static_cast<size_t>(nx + m), Rational(0));
      std::vector<Majorant> mF;
      for (const auto& Fi : sys.F) mF.push_back(child_majorant(Fi, f));
      Rational normA(0);
      for (const auto& row : sys.jacobian_inverse) {
        Rational s(0);
        for (const auto& v : row) s += abs(v);
        normA = std::max(normA, s);
      }
      std::vector<Rational> rx(static_cast<size_t>(nx));
      Rational ry;
      bool first = true;
      for (const auto& mi : mF) {
        for (int i = 0; i < nx; ++i) {
          rx[static_cast<size_t>(i)] = first ? mi.radii[static_cast<size_t>(i)]
                                             : std::min(rx[static_cast<size_t>(i)], mi.radii[static_cast<size_t>(i)]);
        }
        for (int j = 0; j < m; ++j) {
          const Rational& r = mi.radii[static_cast<size_t>(nx + j)];
          ry = first && j == 0 ? r : std::min(ry, r);
        }
        first = false;
      }
      auto linear_y = [&](const MultiIndex& alpha) {
        if (alpha.degree() != 1) return false;
        for (int j = 0; j < m; ++j) {
          if (alpha[nx + j] == 1) return true;
        }
        return false;
      };
      std::optional<Majorant> best;
      for (int k = 0; k < 16; ++k) {
        const Rational y0 = snap_down(ry * kTheta * ian::pow(Rational(3, 4), static_cast<unsigned>(k)));
        auto pred = [&](const std::vector<Rational>& rho) {
          std::vector<Rational> box = rho;
          box.resize(static_cast<size_t>(nx + m), y0);
          for (size_t i = 0; i < sys.F.size(); ++i) {
            auto psi = abs_sum_bound(sys.F[i], mF[i], box, 1, linear_y);
            if (!psi || normA * *psi > y0) return false;
          }
          return true;
        };
        auto rho = shrink(rx, pred);
        if (!rho) continue;
        Rational worst = rho->empty() ? Rational(1) : *std::min_element(rho->begin(), rho->end());
        Rational best_worst(0);
        if (best && !best->radii.empty()) best_worst = *std::min_element(best->radii.begin(), best->radii.end());
        if (!best || worst > best_worst) best = make(y0, *rho);
        if (nx == 0) break;
      }
      if (!best) unavailable("implicit: no admissible polydisc found");
      return *best;
    }
    case NodeKind::IntLast: {
      const int nc = ch[0].arity();
      std::vector<Rational> f = focus;
      f.push_back(abs(nd.scalar));
      Majorant mc = child_majorant(ch[0], f);
      if (nd.scalar != 0 && abs(nd.scalar) >= mc.radii.back()) mc = *nd.child_majorant;
      // antiderivative in the last variable, translation to (0, a), restriction
      const Rational rn = mc.radii[static_cast<size_t>(nc - 1)];
      Rational M = mc.M * rn * rn / (rn - abs(nd.scalar));
      mc.radii.pop_back();
      return make(M, mc.radii);
    }
  }
  throw Error(ErrorKind::Unsupported, "majorant rule missing");
}

}  // namespace

Majorant add_rule(const Majorant& a, const Majorant& b) {
  std::vector<Rational> r;
  for (size_t i = 0; i < a.radii.size(); ++i) r.push_back(std::min(a.radii[i], b.radii[i]));
  return make(a.M + b.M, std::move(r));
}

Majorant translate_rule(const Majorant& child, std::span<const Rational> a) {
  Rational M = child.M;
  std::vector<Rational> r;
  for (size_t i = 0; i < child.radii.size(); ++i) {
    const Rational ai = abs(a[i]);
    if (ai >= child.radii[i]) throw Error(ErrorKind::TranslationOutsideDomain, "point outside the majorant radii");
    M *= child.radii[i] / (child.radii[i] - ai);
    r.push_back(child.radii[i] - ai);
  }
  return make(M, std::move(r));
}

Majorant majorant_of(const SeriesExpr& e) {
  std::vector<Rational> zero(static_cast<size_t>(e.arity()), Rational(0));
  return majorant_of(e, zero);
}

Majorant majorant_of(const SeriesExpr& e, std::span<const Rational> focus) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
  if (static_cast<int>(focus.size()) != e.arity()) throw Error(ErrorKind::ArityMismatch, "focus size");
  std::vector<Rational> key;
  for (const auto& f : focus) key.push_back(snap_up(abs(f)));
  const Node& nd = e.node();
  {
    std::lock_guard lock(nd.cache.mu);
    auto it = nd.cache.majorants.find(key);
    if (it != nd.cache.majorants.end()) return it->second;
  }
  Majorant m = compute(e, key);
  std::lock_guard lock(nd.cache.mu);
  nd.cache.majorants.emplace(key, m);
  return m;
}

Rational tail_bound(const Majorant& m, std::span<const Rational> x, int N) {
  const size_t n = m.radii.size();
  if (x.size() != n) throw Error(ErrorKind::ArityMismatch, "point size differs from majorant arity");
  if (n == 0 || m.M == 0) return Rational(0);
  Rational t(0);
  for (size_t i = 0; i < n; ++i) {
    const Rational q = abs(x[i]) / m.radii[i];
    if (q >= 1) throw Error(ErrorKind::PointOutsideRadii, "point not strictly inside the majorant radii");
    t = std::max(t, q);
  }
  if (t == 0) return Rational(0);
  t = up64(t);
  if (t >= 1) throw Error(ErrorKind::PointOutsideRadii, "point too close to the majorant radii");
  const auto N1 = static_cast<unsigned>(N + 1);
  const Rational tn = pow_up(t, N1);
  const Rational inv_one_minus_t_n = up64(ian::pow(1 / (1 - t), static_cast<unsigned>(n)));
  // M (N+1)^(n-1) t^(N+1) / (1-t)^n
  const Rational simple =
      up64(m.M * ian::pow(Rational(N + 1), static_cast<unsigned>(n - 1)) * tn * inv_one_minus_t_n);
  // M binom(N+n, n-1) t^(N+1) / (1-q), q = t (N+1+n)/(N+2): ratio bound of
  // consecutive shells; capped by the whole majorant sum M / (1-t)^n
  const Rational whole = up64(m.M * inv_one_minus_t_n);
  Rational shells = whole;
  const Rational q = t * Rational(N + 1 + static_cast<long>(n), N + 2);
  if (q < 1) {
    Rational b(binomial(static_cast<unsigned>(N) + static_cast<unsigned>(n), static_cast<unsigned>(n - 1)));
    shells = std::min(whole, up64(m.M * b * tn / (1 - q)));
  }
  return std::max(simple, shells);
}

MajorantCheck validate_majorant(const SeriesExpr& e, const Majorant& m, int N) {
  MajorantCheck out;
  const int n = e.arity();
  if (static_cast<int>(m.radii.size()) != n) throw Error(ErrorKind::ArityMismatch, "majorant arity");
  std::shared_ptr<const Trunc<Rational>> exact;
  std::shared_ptr<const Trunc<Ball>> balls;
  if (e.is_exact()) {
    std::lock_guard lock(e.node().cache.mu);
    if (e.node().cache.exact && e.node().cache.exact->order >= N) exact = e.node().cache.exact;
  }
  // upper bounds from balls are conservative: a pass is still a proof
  if (!exact) balls = ball_trunc(e, 32, N);
  for_each_monomial(n, N, [&](const MultiIndex& alpha) {
    if (!out.ok) return;
    Rational v(0);
    if (exact) {
      if (const Rational* c = exact->find(alpha)) v = abs(*c);
    } else if (const Ball* c = balls->find(alpha)) {
      v = c->abs_upper();
    }
    if (v == 0) return;
    Rational bound = m.M;
    for (int i = 0; i < n; ++i) {
      if (alpha[i]) bound /= ian::pow(m.radii[static_cast<size_t>(i)], alpha[i]);
    }
    if (v > bound) {
      out.ok = false;
      out.witness = alpha;
    }
  });
  return out;
}

}  // namespace ian
