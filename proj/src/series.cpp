#include "ian/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ian/algebraic.hpp"
#include "ian/error.hpp"
#include "ian/majorant.hpp"
#include "ian/node.hpp"

namespace ian {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Poly: return "poly";
    case NodeKind::Alg: return "alg";
    case NodeKind::Add: return "add";
    case NodeKind::Mul: return "mul";
    case NodeKind::Scale: return "scale";
    case NodeKind::Recip: return "recip";
    case NodeKind::SubstPoly: return "subst";
    case NodeKind::Compose: return "compose";
    case NodeKind::Translate: return "translate";
    case NodeKind::Antider: return "antider";
    case NodeKind::Deriv: return "deriv";
    case NodeKind::Restrict0: return "restrict0";
    case NodeKind::Permute: return "permute";
    case NodeKind::Inverse: return "inverse";
    case NodeKind::Implicit: return "implicit";
    case NodeKind::Re: return "re";
    case NodeKind::Im: return "im";
    case NodeKind::IntLast: return "intlast";
  }
  return "?";
}

int SeriesExpr::arity() const { return node_->arity; }
NodeKind SeriesExpr::kind() const { return node_->kind; }
bool SeriesExpr::is_exact() const { return node_->exact; }

std::string to_string(const Coefficient& c, int digits) {
  if (const auto* q = std::get_if<Rational>(&c)) return ian::to_string(*q);
  return std::get<Ball>(c).to_string(digits);
}

const Coefficient& TruncatedSeries::at(const MultiIndex& alpha) const {
  auto it = coeffs.find(alpha);
  if (it == coeffs.end()) throw Error(ErrorKind::InvalidArgument, "index outside the truncation window");
  return it->second;
}

namespace {

std::shared_ptr<Node> new_node(NodeKind kind, int arity, std::vector<SeriesExpr> children = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->arity = arity;
  n->exact = std::all_of(children.begin(), children.end(), [](const SeriesExpr& c) { return c.is_exact(); });
  n->children = std::move(children);
  return n;
}

void require(const SeriesExpr& e) {
  if (!e.valid()) throw Error(ErrorKind::InvalidArgument, "empty expression");
}

void require_var(const SeriesExpr& e, int var) {
  require(e);
  if (var < 0 || var >= e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "variable index " + std::to_string(var + 1) + " outside arity " +
                                               std::to_string(e.arity()));
  }
}

// Upper bound with a short mantissa.
Rational up(const Rational& q) { return round_rational(q, 64, Round::Up).to_rational(); }

// M * prod r_i^-beta_i, rounded up.
Rational majorant_scale(const Majorant& m, const MultiIndex& beta) {
  Rational v = m.M;
  for (int i = 0; i < beta.arity(); ++i) {
    if (beta[i]) v /= ian::pow(m.radii[static_cast<size_t>(i)], beta[i]);
  }
  return up(v);
}

// ---- Translate -----------------------------------------------------------

struct TailChoice {
  int K = 0;
  Rational factor;  // sum_{k>K} binom(k+B,k) t^k, rounded up
};

// Smallest K with sum_{k>K} binom(k+B,k) t^k <= 2^-bits (1-t)^-(B+1), i.e. a
// relative error of 2^-bits on the worst-case coefficient size.
TailChoice choose_tail(const Rational& t, long B, long bits) {
  const double log_one_minus_t = std::log2(1.0 - t.get_d());
  Rational term(1);  // binom(k+B,k) t^k at k
  for (int k = 0; k < (1 << 16); ++k) {
    term = up(term * t * Rational(k + 1 + B, k + 1));
    Rational q = up(t * Rational(k + 2 + B, k + 2));
    if (q >= 1) continue;
    Rational factor = up(term / (1 - q));
    if (sgn(factor) == 0) return {k, factor};
    double lg = static_cast<double>(floor_log2(factor) + 1) + static_cast<double>(B + 1) * log_one_minus_t;
    if (lg <= -static_cast<double>(bits)) return {k, factor};
  }
  throw Error(ErrorKind::MajorantUnavailable, "translation point too close to the radius of convergence");
}

Trunc<Ball> translate_balls(const Node& node, long prec, int N) {
  const Majorant& m = *node.child_majorant;
  const int n = node.arity;
  std::vector<int> S;
  Rational t(0);
  for (int i = 0; i < n; ++i) {
    const Rational& a = node.point[static_cast<size_t>(i)];
    if (a == 0) continue;
    S.push_back(i);
    t = std::max(t, up(abs(a) / m.radii[static_cast<size_t>(i)]));
  }
  if (S.empty()) {
    auto child = ball_trunc(node.children[0], prec, N);
    Trunc<Ball> r(n, N);
    for (const auto& [alpha, c] : child->terms) {
      if (static_cast<int>(alpha.degree()) > N) break;
      r.terms.emplace_hint(r.terms.end(), alpha, c);
    }
    return r;
  }
  const long work = prec + 16;
  const BallField f{work};
  const long maxB = N + static_cast<long>(S.size()) - 1;
  std::vector<TailChoice> tails;
  int maxK = 0;
  for (long B = 0; B <= maxB; ++B) {
    tails.push_back(choose_tail(t, B, prec + 4));
    maxK = std::max(maxK, tails.back().K);
  }
  const int Nc = N + maxK;
  auto child = ball_trunc(node.children[0], work, Nc);

  // The shift factors over the variables in S, so it is applied one variable
  // at a time along lines of the window |alpha| <= Nc. Each output beta then
  // sums every gamma with |beta + gamma| <= Nc, which includes |gamma| <= K_B,
  // so the tail estimate for K_B still bounds what is left out.
  Trunc<Ball> cur(n, Nc);
  for (const auto& [alpha, c] : child->terms) {
    if (static_cast<int>(alpha.degree()) > Nc) break;
    cur.terms.emplace_hint(cur.terms.end(), alpha, c);
  }
  for (int i : S) {
    const Rational& a = node.point[static_cast<size_t>(i)];
    // w[m][g] = binom(m, g) a^g
    std::vector<std::vector<Ball>> w(static_cast<size_t>(Nc) + 1);
    std::vector<Rational> apow{Rational(1)};
    for (int g = 1; g <= Nc; ++g) apow.push_back(apow.back() * a);
    for (int mdeg = 0; mdeg <= Nc; ++mdeg) {
      auto& row = w[static_cast<size_t>(mdeg)];
      for (int g = 0; g <= mdeg; ++g) {
        row.push_back(f.from(Rational(binomial(static_cast<unsigned>(mdeg), static_cast<unsigned>(g))) * apow[static_cast<size_t>(g)]));
      }
    }
    Trunc<Ball> next(n, Nc);
    std::vector<const Ball*> line;
    for_each_monomial(n, Nc, [&](const MultiIndex& base) {
      if (base[i] != 0) return;
      const int L = Nc - static_cast<int>(base.degree());
      line.assign(static_cast<size_t>(L) + 1, nullptr);
      MultiIndex alpha = base;
      bool any = false;
      for (int k = 0; k <= L; ++k) {
        alpha.set(i, static_cast<std::uint32_t>(k));
        line[static_cast<size_t>(k)] = cur.find(alpha);
        any = any || line[static_cast<size_t>(k)] != nullptr;
      }
      if (!any) return;
      for (int k = 0; k <= L; ++k) {
        Ball sum;
        for (int j = k; j <= L; ++j) {
          if (const Ball* c = line[static_cast<size_t>(j)]) {
            sum = f.add(sum, f.mul(*c, w[static_cast<size_t>(j)][static_cast<size_t>(j - k)]));
          }
        }
        if (sum.is_zero()) continue;
        alpha.set(i, static_cast<std::uint32_t>(k));
        next.terms.emplace(alpha, std::move(sum));
      }
    });
    cur = std::move(next);
  }

  Trunc<Ball> r(n, N);
  for_each_monomial(n, N, [&](const MultiIndex& beta) {
    long B = static_cast<long>(S.size()) - 1;
    for (int i : S) B += beta[i];
    const TailChoice& tail = tails[static_cast<size_t>(B)];
    Ball value = Ball::from_rational(0, prec);
    if (const Ball* c = cur.find(beta)) value = add(*c, value, prec);
    value = value.add_error(majorant_scale(m, beta) * tail.factor);
    r.terms.emplace_hint(r.terms.end(), beta, std::move(value));
  });
  return r;
}

// ---- IntLast -------------------------------------------------------------

Trunc<Ball> intlast_balls(const Node& node, long prec, int N) {
  const Majorant& m = *node.child_majorant;
  const int n = node.children[0].arity();
  const Rational& a = node.scalar;
  const int out_arity = n - 1;
  Trunc<Ball> r(out_arity, N);
  if (a == 0) return r;
  const Rational t = up(abs(a) / m.radii.back());
  // t^(K+1) <= 2^-(prec+4)
  const double per_term = -std::log2(t.get_d());
  const int K = static_cast<int>(std::ceil(static_cast<double>(prec + 4) / per_term));
  const Rational factor = up(abs(a) * ian::pow(t, static_cast<unsigned>(K + 1)) / (1 - t));

  const long work = prec + 16;
  const BallField f{work};
  auto child = ball_trunc(node.children[0], work, N + K);
  std::vector<Ball> weights;  // a^(k+1)/(k+1)
  Ball ak = f.one(), ab = f.from(a);
  for (int k = 0; k <= K; ++k) {
    ak = f.mul(ak, ab);
    weights.push_back(f.scale(ak, Rational(1, k + 1)));
  }
  std::map<MultiIndex, Ball> sums;
  for (const auto& [alpha, c] : child->terms) {
    const int k = static_cast<int>(alpha[n - 1]);
    if (k > K) continue;
    MultiIndex beta = alpha.erase(n - 1);
    if (static_cast<int>(beta.degree()) > N) continue;
    Ball term = f.mul(c, weights[static_cast<size_t>(k)]);
    auto [it, inserted] = sums.try_emplace(beta, term);
    if (!inserted) it->second = f.add(it->second, term);
  }
  Majorant outer{m.M, std::vector<Rational>(m.radii.begin(), m.radii.end() - 1)};
  for_each_monomial(out_arity, N, [&](const MultiIndex& beta) {
    auto it = sums.find(beta);
    Ball v = it == sums.end() ? Ball() : it->second;
    v = add(v, Ball(), prec).add_error(majorant_scale(outer, beta) * factor);
    r.terms.emplace_hint(r.terms.end(), beta, std::move(v));
  });
  return r;
}

// ---- generic per-kind recurrences ----------------------------------------

template <class F, class Get>
Trunc<typename F::value_type> compute(const Node& node, const F& f, int N, Get get) {
  using V = typename F::value_type;
  const auto& ch = node.children;
  switch (node.kind) {
    case NodeKind::Poly: return kernels::from_poly(f, node.poly, N);
    case NodeKind::Add: return kernels::add(f, *get(ch[0], N), *get(ch[1], N), N);
    case NodeKind::Mul: return kernels::mul(f, *get(ch[0], N), *get(ch[1], N), N);
    case NodeKind::Scale: return kernels::scale(f, *get(ch[0], N), node.scalar, N);
    case NodeKind::Recip: return kernels::recip(f, *get(ch[0], N), N);
    case NodeKind::SubstPoly: {
      std::vector<Trunc<V>> args;
      for (const auto& h : node.polys) args.push_back(kernels::from_poly(f, h, N));
      return kernels::substitute(f, *get(ch[0], N), std::span<const Trunc<V>>(args), N);
    }
    case NodeKind::Compose: {
      std::vector<Trunc<V>> args;
      for (size_t j = 1; j < ch.size(); ++j) {
        args.push_back(*get(ch[j], N));
        // vanishing at 0 was proved at construction; a ball recurrence may
        // still leave a zero-width or tiny ball there
        args.back().terms.erase(MultiIndex(node.arity));
      }
      return kernels::substitute(f, *get(ch[0], N), std::span<const Trunc<V>>(args), N);
    }
    case NodeKind::Antider: return kernels::antider(f, *get(ch[0], std::max(N - 1, 0)), node.index, N);
    case NodeKind::Deriv: return kernels::deriv(f, *get(ch[0], N + 1), node.index, N);
    case NodeKind::Restrict0: return kernels::restrict0(f, *get(ch[0], N), node.index, N);
    case NodeKind::Permute: return kernels::permute(f, *get(ch[0], N), std::span<const int>(node.perm), N);
    case NodeKind::Re: return kernels::complexify(f, *get(ch[0], N), false, N);
    case NodeKind::Im: return kernels::complexify(f, *get(ch[0], N), true, N);
    default: break;
  }
  throw Error(ErrorKind::Unsupported, std::string("no generic recurrence for ") + to_string(node.kind));
}

Trunc<Rational> compute_exact(const Node& node, int N) {
  switch (node.kind) {
    case NodeKind::Alg: {
      auto y = lift_algebraic(*node.alg, N);
      Trunc<Rational> r(1, N);
      for (size_t p = 0; p < y.size(); ++p) {
        if (y[p] != 0) r.terms.emplace_hint(r.terms.end(), MultiIndex{static_cast<std::uint32_t>(p)}, y[p]);
      }
      return r;
    }
    case NodeKind::Inverse: return inverse_trunc(node, N);
    case NodeKind::Implicit: {
      auto sol = implicit_solution(*node.system, N);
      return (*sol)[static_cast<size_t>(node.index)];
    }
    default: break;
  }
  auto get = [](const SeriesExpr& c, int n) { return exact_trunc(c, n); };
  return compute(node, ExactField{}, N, get);
}

Trunc<Ball> compute_balls(const Node& node, long prec, int N) {
  switch (node.kind) {
    case NodeKind::Translate: return translate_balls(node, prec, N);
    case NodeKind::IntLast: return intlast_balls(node, prec, N);
    default: break;
  }
  auto get = [prec](const SeriesExpr& c, int n) { return ball_trunc(c, prec, n); };
  return compute(node, BallField{prec}, N, get);
}

}  // namespace

std::shared_ptr<const Trunc<Rational>> exact_trunc(const SeriesExpr& e, int N) {
  const Node& node = e.node();
  if (!node.exact) throw Error(ErrorKind::Unsupported, "coefficients of this node are not exact");
  {
    std::lock_guard lock(node.cache.mu);
    if (node.cache.exact && node.cache.exact->order >= N) return node.cache.exact;
  }
  auto result = std::make_shared<const Trunc<Rational>>(compute_exact(node, N));
  std::lock_guard lock(node.cache.mu);
  if (!node.cache.exact || node.cache.exact->order < result->order) node.cache.exact = result;
  return result;
}

std::shared_ptr<const Trunc<Ball>> ball_trunc(const SeriesExpr& e, long prec, int N) {
  const Node& node = e.node();
  {
    std::lock_guard lock(node.cache.mu);
    auto it = node.cache.balls.find(prec);
    if (it != node.cache.balls.end() && it->second->order >= N) return it->second;
  }
  // a cached window that is too short is regrown geometrically, so a caller
  // walking the coefficients one degree at a time pays a logarithmic number of passes
  {
    std::lock_guard lock(node.cache.mu);
    auto it = node.cache.balls.find(prec);
    if (it != node.cache.balls.end() && it->second->order > 0) N = std::max(N, std::min(2 * it->second->order, N + 16));
  }
  std::shared_ptr<const Trunc<Ball>> result;
  std::shared_ptr<const Trunc<Rational>> known;
  if (node.exact) {
    std::lock_guard lock(node.cache.mu);
    if (node.cache.exact && node.cache.exact->order >= N) known = node.cache.exact;
  }
  // Exact rationals grow quickly with the order; ball recurrences keep the
  // working size fixed. Newton-based kinds still lift exactly.
  const bool newton = node.kind == NodeKind::Alg || node.kind == NodeKind::Inverse || node.kind == NodeKind::Implicit;
  if (known || (node.exact && newton)) {
    result = std::make_shared<const Trunc<Ball>>(kernels::to_balls(known ? *known : *exact_trunc(e, N), prec, N));
  } else {
    result = std::make_shared<const Trunc<Ball>>(compute_balls(node, prec, N));
  }
  std::lock_guard lock(node.cache.mu);
  auto& slot = node.cache.balls[prec];
  if (!slot || slot->order < result->order) slot = result;
  return result;
}

// ---- constructors ----------------------------------------------------------

SeriesExpr poly(Polynomial p) {
  auto n = new_node(NodeKind::Poly, p.arity());
  n->poly = std::move(p);
  return SeriesExpr(n);
}

SeriesExpr constant(int arity, const Rational& c) { return poly(Polynomial::constant(arity, c)); }

SeriesExpr add(const SeriesExpr& a, const SeriesExpr& b) {
  require(a);
  require(b);
  if (a.arity() != b.arity()) throw Error(ErrorKind::ArityMismatch, "add of series with different arity");
  return SeriesExpr(new_node(NodeKind::Add, a.arity(), {a, b}));
}

SeriesExpr sub(const SeriesExpr& a, const SeriesExpr& b) { return add(a, scale(Rational(-1), b)); }

SeriesExpr mul(const SeriesExpr& a, const SeriesExpr& b) {
  require(a);
  require(b);
  if (a.arity() != b.arity()) throw Error(ErrorKind::ArityMismatch, "mul of series with different arity");
  return SeriesExpr(new_node(NodeKind::Mul, a.arity(), {a, b}));
}

SeriesExpr scale(const Rational& q, const SeriesExpr& e) {
  require(e);
  auto n = new_node(NodeKind::Scale, e.arity(), {e});
  n->scalar = q;
  return SeriesExpr(n);
}

SeriesExpr recip(const SeriesExpr& e) {
  require(e);
  const MultiIndex zero(e.arity());
  if (e.is_exact()) {
    if (!exact_trunc(e, 0)->find(zero)) {
      throw Error(ErrorKind::NonUnitReciprocal, "reciprocal requires a nonzero constant term");
    }
  } else {
    bool certified = false;
    for (long prec = 64; prec <= 1024 && !certified; prec *= 2) {
      const Ball* c = ball_trunc(e, prec, 0)->find(zero);
      certified = c != nullptr && !c->contains_zero();
    }
    if (!certified) throw Error(ErrorKind::NonUnitReciprocal, "constant term not provably nonzero");
  }
  return SeriesExpr(new_node(NodeKind::Recip, e.arity(), {e}));
}

SeriesExpr subst_poly(const SeriesExpr& e, std::vector<Polynomial> h) {
  require(e);
  if (static_cast<int>(h.size()) != e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "substitution needs one polynomial per variable");
  }
  int m = h.empty() ? 0 : h.front().arity();
  for (const auto& p : h) {
    if (p.arity() != m) throw Error(ErrorKind::ArityMismatch, "substituted polynomials of different arity");
    if (p.constant_term() != 0) throw Error(ErrorKind::NonvanishingSubstitution, "h_j(0) != 0");
  }
  if (h.empty()) throw Error(ErrorKind::ArityMismatch, "substitution into a constant series");
  auto n = new_node(NodeKind::SubstPoly, m, {e});
  n->polys = std::move(h);
  return SeriesExpr(n);
}

SeriesExpr translate(const SeriesExpr& e, std::vector<Rational> a) {
  require(e);
  if (static_cast<int>(a.size()) != e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "translation point must have one entry per variable");
  }
  std::vector<Rational> focus;
  for (const auto& v : a) focus.push_back(abs(v));
  Majorant m;
  try {
    m = majorant_of(e, focus);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::MajorantUnavailable) throw;
    throw Error(ErrorKind::TranslationOutsideDomain, std::string("no certified majorant: ") + err.what());
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && abs(a[i]) >= m.radii[i]) {
      throw Error(ErrorKind::TranslationOutsideDomain,
                  "|a_" + std::to_string(i + 1) + "| = " + to_string(abs(a[i])) +
                      " is not inside the certified radius " + to_string(m.radii[i]));
    }
  }
  auto n = new_node(NodeKind::Translate, e.arity(), {e});
  n->exact = false;
  n->point = std::move(a);
  n->child_majorant = std::move(m);
  return SeriesExpr(n);
}

SeriesExpr antider(const SeriesExpr& e, int var) {
  require_var(e, var);
  auto n = new_node(NodeKind::Antider, e.arity(), {e});
  n->index = var;
  return SeriesExpr(n);
}

SeriesExpr deriv(const SeriesExpr& e, int var) {
  require_var(e, var);
  auto n = new_node(NodeKind::Deriv, e.arity(), {e});
  n->index = var;
  return SeriesExpr(n);
}

SeriesExpr restrict0(const SeriesExpr& e, int var) {
  require_var(e, var);
  auto n = new_node(NodeKind::Restrict0, e.arity() - 1, {e});
  n->index = var;
  return SeriesExpr(n);
}

SeriesExpr permute(const SeriesExpr& e, std::vector<int> sigma) {
  require(e);
  const int n = e.arity();
  if (static_cast<int>(sigma.size()) != n) throw Error(ErrorKind::ArityMismatch, "permutation length");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[static_cast<size_t>(s)]) {
      throw Error(ErrorKind::ArityMismatch, "not a permutation of the variables");
    }
    seen[static_cast<size_t>(s)] = true;
  }
  auto node = new_node(NodeKind::Permute, n, {e});
  node->perm = std::move(sigma);
  return SeriesExpr(node);
}

SeriesExpr integrate_last(const SeriesExpr& e, const Rational& a) {
  require(e);
  const int n = e.arity();
  if (n < 1) throw Error(ErrorKind::ArityMismatch, "integration needs at least one variable");
  std::vector<Rational> focus(static_cast<size_t>(n), Rational(0));
  focus.back() = abs(a);
  Majorant m;
  try {
    m = majorant_of(e, focus);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::MajorantUnavailable) throw;
    throw Error(ErrorKind::TranslationOutsideDomain, std::string("no certified majorant: ") + err.what());
  }
  if (a != 0 && abs(a) >= m.radii.back()) {
    throw Error(ErrorKind::TranslationOutsideDomain,
                "endpoint " + to_string(a) + " is not inside the certified radius " + to_string(m.radii.back()));
  }
  auto node = new_node(NodeKind::IntLast, n - 1, {e});
  node->exact = false;
  node->scalar = a;
  node->child_majorant = std::move(m);
  return SeriesExpr(node);
}

// ---- coefficient access ----------------------------------------------------

Rational default_coeff_tolerance() { return pow2(-128); }

namespace {

constexpr long kMaxPrecision = 1L << 16;

void check_index(const SeriesExpr& e, const MultiIndex& alpha) {
  require(e);
  if (alpha.arity() != e.arity()) {
    throw Error(ErrorKind::ArityMismatch, "index " + alpha.to_string() + " for a series of arity " +
                                               std::to_string(e.arity()));
  }
}

// Smallest power of two >= 64 that leaves 16 guard bits below tol.
long start_precision(const Rational& tol) {
  long need = 64;
  if (tol > 0) need = std::max(need, 16 - floor_log2(tol));
  long prec = 64;
  while (prec < need && prec < kMaxPrecision) prec *= 2;
  return prec;
}

}  // namespace

Coefficient coeff(const SeriesExpr& e, const MultiIndex& alpha) { return coeff(e, alpha, default_coeff_tolerance()); }

Coefficient coeff(const SeriesExpr& e, const MultiIndex& alpha, const Rational& tol) {
  check_index(e, alpha);
  const int d = static_cast<int>(alpha.degree());
  if (e.is_exact()) {
    const Rational* c = exact_trunc(e, d)->find(alpha);
    return c ? *c : Rational(0);
  }
  for (long prec = start_precision(tol); prec <= kMaxPrecision; prec *= 2) {
    const Ball* c = ball_trunc(e, prec, d)->find(alpha);
    if (c == nullptr) return Ball();
    if (c->rad().to_rational() <= tol) return *c;
  }
  throw Error(ErrorKind::Unsupported, "coefficient could not be refined to the requested tolerance");
}

TruncatedSeries truncate(const SeriesExpr& e, int N) { return truncate(e, N, default_coeff_tolerance()); }

TruncatedSeries truncate(const SeriesExpr& e, int N, const Rational& tol) {
  require(e);
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "truncation order must be >= 0");
  TruncatedSeries out;
  out.arity = e.arity();
  out.order = N;
  if (e.is_exact()) {
    auto t = exact_trunc(e, N);
    for_each_monomial(e.arity(), N, [&](const MultiIndex& alpha) {
      const Rational* c = t->find(alpha);
      out.coeffs.emplace_hint(out.coeffs.end(), alpha, c ? *c : Rational(0));
    });
    return out;
  }
  for (long prec = start_precision(tol); prec <= kMaxPrecision; prec *= 2) {
    auto t = ball_trunc(e, prec, N);
    bool ok = true;
    out.coeffs.clear();
    for_each_monomial(e.arity(), N, [&](const MultiIndex& alpha) {
      const Ball* c = t->find(alpha);
      Ball b = c ? *c : Ball();
      if (b.rad().to_rational() > tol) ok = false;
      out.coeffs.emplace_hint(out.coeffs.end(), alpha, std::move(b));
    });
    if (ok) return out;
  }
  throw Error(ErrorKind::Unsupported, "truncation could not be refined to the requested tolerance");
}

}  // namespace ian
