#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>

#include "ian/trunc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ian {

namespace {
#ifdef _OPENMP
std::atomic<KernelMode> g_mode{KernelMode::Parallel};
#else
std::atomic<KernelMode> g_mode{KernelMode::Serial};
#endif
}  // namespace

void set_kernel_mode(KernelMode mode) { g_mode.store(mode); }
KernelMode kernel_mode() { return g_mode.load(); }

int kernel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

namespace {

template <class F, class V>
void accumulate(const F& f, std::map<MultiIndex, V>& out, const MultiIndex& key, V value) {
  auto [it, inserted] = out.try_emplace(key, std::move(value));
  if (!inserted) it->second = f.add(it->second, value);
}

template <class F, class V>
void drop_zeros(const F& f, std::map<MultiIndex, V>& terms) {
  std::erase_if(terms, [&](const auto& kv) { return f.is_zero(kv.second); });
}

}  // namespace

template <class F>
Trunc<typename F::value_type> mul_serial(const F& f, const Trunc<typename F::value_type>& a,
                                         const Trunc<typename F::value_type>& b, int N) {
  using V = typename F::value_type;
  const int order = std::min({N, a.order, b.order});
  Trunc<V> r(a.arity, order);
  for (const auto& [alpha, ca] : a.terms) {
    const int da = static_cast<int>(alpha.degree());
    if (da > order) break;
    for (const auto& [beta, cb] : b.terms) {
      if (da + static_cast<int>(beta.degree()) > order) break;
      accumulate(f, r.terms, alpha + beta, f.mul(ca, cb));
    }
  }
  drop_zeros(f, r.terms);
  return r;
}

template <class F>
Trunc<typename F::value_type> mul_parallel(const F& f, const Trunc<typename F::value_type>& a,
                                           const Trunc<typename F::value_type>& b, int N) {
  using V = typename F::value_type;
  const int order = std::min({N, a.order, b.order});
  Trunc<V> r(a.arity, order);

  std::set<MultiIndex> support;
  for (const auto& [alpha, ca] : a.terms) {
    const int da = static_cast<int>(alpha.degree());
    if (da > order) break;
    for (const auto& [beta, cb] : b.terms) {
      if (da + static_cast<int>(beta.degree()) > order) break;
      support.insert(alpha + beta);
    }
  }
  std::vector<MultiIndex> outs(support.begin(), support.end());
  std::vector<std::pair<const MultiIndex*, const V*>> lhs;
  lhs.reserve(a.terms.size());
  for (const auto& [alpha, ca] : a.terms) lhs.emplace_back(&alpha, &ca);

  std::vector<V> vals(outs.size());
  const auto count = static_cast<std::ptrdiff_t>(outs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const MultiIndex& gamma = outs[static_cast<size_t>(i)];
    bool first = true;
    V acc{};
    for (const auto& [alpha, ca] : lhs) {
      if (alpha->degree() > gamma.degree()) break;
      if (!alpha->divides(gamma)) continue;
      const V* cb = b.find(gamma - *alpha);
      if (cb == nullptr) continue;
      V p = f.mul(*ca, *cb);
      if (first) {
        acc = std::move(p);
        first = false;
      } else {
        acc = f.add(acc, p);
      }
    }
    vals[static_cast<size_t>(i)] = std::move(acc);
  }
  for (size_t i = 0; i < outs.size(); ++i) {
    if (!f.is_zero(vals[i])) r.terms.emplace_hint(r.terms.end(), outs[i], std::move(vals[i]));
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> mul(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N) {
  // small products are not worth a parallel region
  if (kernel_mode() == KernelMode::Parallel && a.terms.size() * b.terms.size() > 4096) {
    return mul_parallel(f, a, b, N);
  }
  return mul_serial(f, a, b, N);
}

namespace {

std::vector<std::vector<Ball>> powers_of(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x,
                                         int N) {
  std::vector<int> maxdeg(static_cast<size_t>(s.arity), 0);
  for (const auto& [alpha, c] : s.terms) {
    if (static_cast<int>(alpha.degree()) > N) break;
    for (int i = 0; i < s.arity; ++i) maxdeg[static_cast<size_t>(i)] = std::max(maxdeg[static_cast<size_t>(i)], static_cast<int>(alpha[i]));
  }
  std::vector<std::vector<Ball>> xp(static_cast<size_t>(s.arity));
  for (int i = 0; i < s.arity; ++i) {
    auto& row = xp[static_cast<size_t>(i)];
    row.push_back(f.one());
    Ball xi = f.from(x[static_cast<size_t>(i)]);
    for (int k = 1; k <= maxdeg[static_cast<size_t>(i)]; ++k) row.push_back(f.mul(row.back(), xi));
  }
  return xp;
}

Ball term(const BallField& f, const MultiIndex& alpha, const Ball& c, const std::vector<std::vector<Ball>>& xp) {
  Ball t = c;
  for (int i = 0; i < alpha.arity(); ++i) {
    if (alpha[i]) t = f.mul(t, xp[static_cast<size_t>(i)][alpha[i]]);
  }
  return t;
}

}  // namespace

Ball partial_sum_serial(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N) {
  auto xp = powers_of(f, s, x, N);
  Ball sum;
  for (const auto& [alpha, c] : s.terms) {
    if (static_cast<int>(alpha.degree()) > N) break;
    sum = f.add(sum, term(f, alpha, c, xp));
  }
  return sum;
}

Ball partial_sum_parallel(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N) {
  auto xp = powers_of(f, s, x, N);
  std::vector<std::pair<const MultiIndex*, const Ball*>> entries;
  for (const auto& [alpha, c] : s.terms) {
    if (static_cast<int>(alpha.degree()) > N) break;
    entries.emplace_back(&alpha, &c);
  }
  std::vector<Ball> terms(entries.size());
  const auto count = static_cast<std::ptrdiff_t>(entries.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& [alpha, c] = entries[static_cast<size_t>(i)];
    terms[static_cast<size_t>(i)] = term(f, *alpha, *c, xp);
  }
  Ball sum;
  for (const auto& t : terms) sum = f.add(sum, t);
  return sum;
}

Ball partial_sum(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N) {
  if (kernel_mode() == KernelMode::Parallel && s.terms.size() > 256) return partial_sum_parallel(f, s, x, N);
  return partial_sum_serial(f, s, x, N);
}

template <class F>
Trunc<typename F::value_type> from_poly(const F& f, const Polynomial& p, int N) {
  Trunc<typename F::value_type> r(p.arity(), N);
  for (const auto& [alpha, c] : p.terms()) {
    if (static_cast<int>(alpha.degree()) > N) break;
    r.terms.emplace(alpha, f.from(c));
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> add(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N) {
  const int order = std::min({N, a.order, b.order});
  Trunc<typename F::value_type> r(a.arity, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    r.terms.emplace(alpha, c);
  }
  for (const auto& [alpha, c] : b.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    accumulate(f, r.terms, alpha, c);
  }
  drop_zeros(f, r.terms);
  return r;
}

template <class F>
Trunc<typename F::value_type> sub(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N) {
  return add(f, a, scale(f, b, Rational(-1), N), N);
}

template <class F>
Trunc<typename F::value_type> scale(const F& f, const Trunc<typename F::value_type>& a, const Rational& q, int N) {
  const int order = std::min(N, a.order);
  Trunc<typename F::value_type> r(a.arity, order);
  if (sgn(q) == 0) return r;
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    r.terms.emplace(alpha, f.scale(c, q));
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> recip(const F& f, const Trunc<typename F::value_type>& a, int N) {
  using V = typename F::value_type;
  const int order = std::min(N, a.order);
  Trunc<V> r(a.arity, order);
  const V* a0 = a.find(MultiIndex(a.arity));
  if (a0 == nullptr) throw Error(ErrorKind::NonUnitReciprocal, "constant term is zero");
  const V inv0 = f.inv(*a0);
  const V minus_inv0 = f.neg(inv0);
  r.terms.emplace(MultiIndex(a.arity), inv0);
  std::vector<std::pair<const MultiIndex*, const V*>> nonconst;
  for (const auto& [beta, c] : a.terms) {
    if (beta.degree() == 0) continue;
    if (static_cast<int>(beta.degree()) > order) break;
    nonconst.emplace_back(&beta, &c);
  }
  for (int d = 1; d <= order; ++d) {
    for (const auto& alpha : monomials_of_degree(a.arity, d)) {
      bool any = false;
      V acc{};
      for (const auto& [beta, c] : nonconst) {
        if (beta->degree() > alpha.degree()) break;
        if (!beta->divides(alpha)) continue;
        const V* prev = r.find(alpha - *beta);
        if (prev == nullptr) continue;
        V p = f.mul(*c, *prev);
        acc = any ? f.add(acc, p) : std::move(p);
        any = true;
      }
      if (!any) continue;
      V value = f.mul(minus_inv0, acc);
      if (!f.is_zero(value)) r.terms.emplace_hint(r.terms.end(), alpha, std::move(value));
    }
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> antider(const F& f, const Trunc<typename F::value_type>& a, int var, int N) {
  const int order = std::min(N, a.order + 1);
  Trunc<typename F::value_type> r(a.arity, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) + 1 > order) break;
    MultiIndex beta = alpha;
    beta.set(var, alpha[var] + 1);
    r.terms.emplace(beta, f.scale(c, Rational(1, alpha[var] + 1)));
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> deriv(const F& f, const Trunc<typename F::value_type>& a, int var, int N) {
  const int order = std::min(N, a.order - 1);
  Trunc<typename F::value_type> r(a.arity, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) - 1 > order) break;
    if (alpha[var] == 0) continue;
    MultiIndex beta = alpha;
    beta.set(var, alpha[var] - 1);
    r.terms.emplace(beta, f.scale(c, Rational(alpha[var])));
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> restrict0(const F&, const Trunc<typename F::value_type>& a, int var, int N) {
  const int order = std::min(N, a.order);
  Trunc<typename F::value_type> r(a.arity - 1, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    if (alpha[var] != 0) continue;
    r.terms.emplace(alpha.erase(var), c);
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> permute(const F&, const Trunc<typename F::value_type>& a, std::span<const int> sigma,
                                      int N) {
  const int order = std::min(N, a.order);
  Trunc<typename F::value_type> r(a.arity, order);
  for (const auto& [beta, c] : a.terms) {
    if (static_cast<int>(beta.degree()) > order) break;
    MultiIndex alpha(a.arity);
    for (int i = 0; i < a.arity; ++i) alpha.set(i, beta[sigma[static_cast<size_t>(i)]]);
    r.terms.emplace(alpha, c);
  }
  return r;
}

template <class F>
Trunc<typename F::value_type> coordinate(const F& f, int arity, int var, int N) {
  Trunc<typename F::value_type> r(arity, N);
  if (N >= 1) r.terms.emplace(MultiIndex::unit(arity, var), f.one());
  return r;
}

template <class F>
Trunc<typename F::value_type> substitute(const F& f, const Trunc<typename F::value_type>& outer,
                                         std::span<const Trunc<typename F::value_type>> args, int N) {
  using V = typename F::value_type;
  if (static_cast<int>(args.size()) != outer.arity) {
    throw Error(ErrorKind::ArityMismatch, "substitution needs one argument per variable");
  }
  const int m = args.empty() ? 0 : args.front().arity;
  int order = std::min(N, outer.order);
  for (const auto& g : args) {
    if (g.arity != m) throw Error(ErrorKind::ArityMismatch, "substitution arguments of different arity");
    if (g.find(MultiIndex(m)) != nullptr) {
      throw Error(ErrorKind::NonvanishingSubstitution, "substituted series must vanish at 0");
    }
    order = std::min(order, g.order);
  }
  Trunc<V> r(m, order);
  if (outer.arity == 0) {
    // a constant series; nothing to substitute
    if (const V* c = outer.find(MultiIndex(0))) r.terms.emplace(MultiIndex(m), *c);
    return r;
  }
  // powers[j][k] = args[j]^k truncated at order
  std::vector<std::vector<Trunc<V>>> powers(args.size());
  auto power = [&](size_t j, unsigned k) -> const Trunc<V>& {
    auto& row = powers[j];
    if (row.empty()) {
      Trunc<V> one(m, order);
      one.terms.emplace(MultiIndex(m), f.one());
      row.push_back(std::move(one));
    }
    while (row.size() <= k) row.push_back(mul(f, row.back(), args[j], order));
    return row[k];
  };
  // Horner in the last variable over groups that share its exponent; the
  // innermost variable uses cached powers, so a bivariate outer series costs
  // O(order) products instead of one product per monomial.
  using Term = std::pair<const MultiIndex*, const V*>;
  std::function<Trunc<V>(const std::vector<Term>&, int)> horner = [&](const std::vector<Term>& terms, int vars) {
    Trunc<V> acc(m, order);
    if (vars == 1) {
      for (const auto& [beta, c] : terms) {
        for (const auto& [alpha, v] : power(0, (*beta)[0]).terms) accumulate(f, acc.terms, alpha, f.mul(*c, v));
      }
      return acc;
    }
    std::map<unsigned, std::vector<Term>> groups;
    for (const auto& t : terms) groups[(*t.first)[vars - 1]].push_back(t);
    const unsigned top = groups.rbegin()->first;
    for (unsigned k = top + 1; k-- > 0;) {
      if (!acc.terms.empty()) acc = mul(f, acc, args[static_cast<size_t>(vars - 1)], order);
      auto it = groups.find(k);
      if (it == groups.end()) continue;
      for (auto& [alpha, v] : horner(it->second, vars - 1).terms) accumulate(f, acc.terms, alpha, std::move(v));
    }
    return acc;
  };
  std::vector<Term> terms;
  for (const auto& [beta, c] : outer.terms) {
    if (static_cast<int>(beta.degree()) > order) break;
    terms.emplace_back(&beta, &c);
  }
  if (!terms.empty()) r = horner(terms, outer.arity);
  drop_zeros(f, r.terms);
  return r;
}

template <class F>
Trunc<typename F::value_type> complexify(const F& f, const Trunc<typename F::value_type>& a, bool imag, int N) {
  const int n = a.arity;
  const int order = std::min(N, a.order);
  Trunc<typename F::value_type> r(2 * n, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    // enumerate b <= alpha componentwise
    MultiIndex b(n);
    while (true) {
      const unsigned nb = b.degree();
      if ((nb % 2 == 1) == imag) {
        Integer w(1);
        for (int j = 0; j < n; ++j) w *= binomial(alpha[j], b[j]);
        const unsigned half = imag ? (nb - 1) / 2 : nb / 2;
        if (half % 2 == 1) w = -w;
        MultiIndex key(2 * n);
        for (int j = 0; j < n; ++j) {
          key.set(j, alpha[j] - b[j]);
          key.set(n + j, b[j]);
        }
        accumulate(f, r.terms, key, f.scale(c, Rational(w)));
      }
      int j = 0;
      while (j < n && b[j] == alpha[j]) {
        b.set(j, 0);
        ++j;
      }
      if (j == n) break;
      b.set(j, b[j] + 1);
    }
  }
  drop_zeros(f, r.terms);
  return r;
}

Trunc<Ball> to_balls(const Trunc<Rational>& a, long prec, int N) {
  const int order = std::min(N, a.order);
  Trunc<Ball> r(a.arity, order);
  for (const auto& [alpha, c] : a.terms) {
    if (static_cast<int>(alpha.degree()) > order) break;
    r.terms.emplace_hint(r.terms.end(), alpha, Ball::from_rational(c, prec));
  }
  return r;
}

#define IAN_INSTANTIATE(F)                                                                                        \
  template Trunc<F::value_type> mul_serial<F>(const F&, const Trunc<F::value_type>&, const Trunc<F::value_type>&, \
                                              int);                                                              \
  template Trunc<F::value_type> mul_parallel<F>(const F&, const Trunc<F::value_type>&,                            \
                                                const Trunc<F::value_type>&, int);                               \
  template Trunc<F::value_type> mul<F>(const F&, const Trunc<F::value_type>&, const Trunc<F::value_type>&, int);  \
  template Trunc<F::value_type> from_poly<F>(const F&, const Polynomial&, int);                                   \
  template Trunc<F::value_type> add<F>(const F&, const Trunc<F::value_type>&, const Trunc<F::value_type>&, int);  \
  template Trunc<F::value_type> sub<F>(const F&, const Trunc<F::value_type>&, const Trunc<F::value_type>&, int);  \
  template Trunc<F::value_type> scale<F>(const F&, const Trunc<F::value_type>&, const Rational&, int);            \
  template Trunc<F::value_type> recip<F>(const F&, const Trunc<F::value_type>&, int);                             \
  template Trunc<F::value_type> antider<F>(const F&, const Trunc<F::value_type>&, int, int);                      \
  template Trunc<F::value_type> deriv<F>(const F&, const Trunc<F::value_type>&, int, int);                        \
  template Trunc<F::value_type> restrict0<F>(const F&, const Trunc<F::value_type>&, int, int);                    \
  template Trunc<F::value_type> permute<F>(const F&, const Trunc<F::value_type>&, std::span<const int>, int);     \
  template Trunc<F::value_type> substitute<F>(const F&, const Trunc<F::value_type>&,                              \
                                              std::span<const Trunc<F::value_type>>, int);                       \
  template Trunc<F::value_type> complexify<F>(const F&, const Trunc<F::value_type>&, bool, int);                  \
  template Trunc<F::value_type> coordinate<F>(const F&, int, int, int);

IAN_INSTANTIATE(ExactField)
IAN_INSTANTIATE(BallField)

#undef IAN_INSTANTIATE

}  // namespace kernels
}  // namespace ian
