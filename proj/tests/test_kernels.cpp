#include <doctest.h>

#include <random>

#include "ian/trunc.hpp"
#include "oracles.hpp"

using namespace ian;

namespace {

Trunc<Rational> random_trunc(std::mt19937_64& rng, int n, int N) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), keep(0, 3);
  Trunc<Rational> t(n, N);
  for_each_monomial(n, N, [&](const MultiIndex& alpha) {
    if (keep(rng) == 0) return;
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (q != 0) t.terms.emplace(alpha, q);
  });
  return t;
}

Rational at(const Trunc<Rational>& t, const MultiIndex& alpha) {
  const Rational* c = t.find(alpha);
  return c ? *c : Rational(0);
}

}  // namespace

TEST_CASE("serial and parallel products are identical") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    const int N = 12 - 2 * n;
    const auto a = random_trunc(rng, n, N), b = random_trunc(rng, n, N);
    const auto s = kernels::mul_serial(ExactField{}, a, b, N);
    const auto p = kernels::mul_parallel(ExactField{}, a, b, N);
    CHECK(s.terms == p.terms);
    // brute force over all pairs
    std::map<MultiIndex, Rational> brute;
    for (const auto& [ia, ca] : a.terms) {
      for (const auto& [ib, cb] : b.terms) {
        if (static_cast<int>(ia.degree() + ib.degree()) <= N) brute[ia + ib] += ca * cb;
      }
    }
    for_each_monomial(n, N, [&](const MultiIndex& alpha) { CHECK(at(s, alpha) == brute[alpha]); });

    const BallField f{128};
    const auto ab = kernels::to_balls(a, 128, N), bb = kernels::to_balls(b, 128, N);
    const auto sb = kernels::mul_serial(f, ab, bb, N);
    const auto pb = kernels::mul_parallel(f, ab, bb, N);
    CHECK(sb.terms == pb.terms);
    for (const auto& [alpha, c] : sb.terms) CHECK(c.contains(at(s, alpha)));
  }
}

TEST_CASE("serial and parallel partial sums are identical") {
  std::mt19937_64 rng(5);
  const int N = 20;
  const auto a = random_trunc(rng, 2, N);
  const BallField f{200};
  const auto balls = kernels::to_balls(a, 200, N);
  const std::vector<Rational> x{Rational(1, 3), Rational(-2, 5)};
  const Ball s = kernels::partial_sum_serial(f, balls, x, N);
  const Ball p = kernels::partial_sum_parallel(f, balls, x, N);
  CHECK(s == p);
  Rational exact = 0;
  for (const auto& [alpha, c] : a.terms) {
    Rational term = c;
    for (unsigned i = 0; i < alpha[0]; ++i) term *= x[0];
    for (unsigned i = 0; i < alpha[1]; ++i) term *= x[1];
    exact += term;
  }
  CHECK(s.contains(exact));
}

TEST_CASE("kernel mode switch") {
  const KernelMode before = kernel_mode();
  set_kernel_mode(KernelMode::Serial);
  CHECK(kernel_mode() == KernelMode::Serial);
  set_kernel_mode(before);
  CHECK(kernel_threads() >= 1);
}

TEST_CASE("reciprocal kernel inverts the product") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 2; ++n) {
    const int N = 10;
    auto a = random_trunc(rng, n, N);
    a.terms[MultiIndex(n)] = Rational(3, 2);
    const auto inv = kernels::recip(ExactField{}, a, N);
    const auto one = kernels::mul_serial(ExactField{}, a, inv, N);
    for_each_monomial(n, N, [&](const MultiIndex& alpha) { CHECK(at(one, alpha) == (alpha.degree() == 0 ? 1 : 0)); });
  }
}

TEST_CASE("antiderivative, derivative, restriction, permutation") {
  std::mt19937_64 rng(13);
  const int N = 8;
  const auto a = random_trunc(rng, 3, N);
  const ExactField f;
  const auto back = kernels::deriv(f, kernels::antider(f, a, 1, N + 1), 1, N);
  for_each_monomial(3, N, [&](const MultiIndex& alpha) { CHECK(at(back, alpha) == at(a, alpha)); });
  const auto r = kernels::restrict0(f, a, 2, N);
  CHECK(r.arity == 2);
  for_each_monomial(2, N, [&](const MultiIndex& beta) { CHECK(at(r, beta) == at(a, beta.insert(2, 0))); });
  const int sigma[3] = {2, 0, 1};
  const auto p = kernels::permute(f, a, sigma, N);
  for_each_monomial(3, N, [&](const MultiIndex& alpha) {
    MultiIndex beta(3);
    for (int i = 0; i < 3; ++i) beta.set(sigma[i], alpha[i]);
    CHECK(at(p, alpha) == at(a, beta));
  });
}

TEST_CASE("univariate substitution matches Horner composition") {
  std::mt19937_64 rng(17);
  const int N = 9;
  const auto a = random_trunc(rng, 1, N);
  auto b = random_trunc(rng, 1, N);
  b.terms.erase(MultiIndex(1));
  const Trunc<Rational> args[1] = {b};
  const auto c = kernels::substitute(ExactField{}, a, std::span<const Trunc<Rational>>(args), N);
  oracle::Dense da(N + 1), db(N + 1);
  for (int p = 0; p <= N; ++p) {
    da[p] = at(a, MultiIndex{static_cast<std::uint32_t>(p)});
    db[p] = at(b, MultiIndex{static_cast<std::uint32_t>(p)});
  }
  const auto dc = oracle::compose(da, db, N);
  for (int p = 0; p <= N; ++p) CHECK(at(c, MultiIndex{static_cast<std::uint32_t>(p)}) == dc[p]);
}
