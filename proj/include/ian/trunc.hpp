#pragma once

#include <map>
#include <span>
#include <vector>

#include "ian/field.hpp"
#include "ian/multi_index.hpp"
#include "ian/polynomial.hpp"

namespace ian {

/// Finite window onto a power series: every coefficient of total degree
/// <= order is represented, absent entries are zero.
template <class T>
struct Trunc {
  int arity = 0;
  int order = -1;
  std::map<MultiIndex, T> terms;

  Trunc() = default;
  Trunc(int n, int N) : arity(n), order(N) {}

  const T* find(const MultiIndex& alpha) const {
    auto it = terms.find(alpha);
    return it == terms.end() ? nullptr : &it->second;
  }
};

enum class KernelMode { Serial, Parallel };

/// Process-wide kernel selection; Parallel is the default when OpenMP is available.
void set_kernel_mode(KernelMode mode);
KernelMode kernel_mode();
int kernel_threads();

namespace kernels {

// Truncated product: every coefficient of a*b with total degree <= N.
// The serial version is the reference; the OpenMP version computes one
// output coefficient per task, summing contributions in the same order, so
// both return bitwise identical results.
template <class F>
Trunc<typename F::value_type> mul_serial(const F& f, const Trunc<typename F::value_type>& a,
                                         const Trunc<typename F::value_type>& b, int N);
template <class F>
Trunc<typename F::value_type> mul_parallel(const F& f, const Trunc<typename F::value_type>& a,
                                           const Trunc<typename F::value_type>& b, int N);
template <class F>
Trunc<typename F::value_type> mul(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N);

// sum_{|alpha| <= N} s_alpha x^alpha. Terms are formed in parallel and
// summed serially in index order.
Ball partial_sum_serial(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N);
Ball partial_sum_parallel(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N);
Ball partial_sum(const BallField& f, const Trunc<Ball>& s, std::span<const Rational> x, int N);

template <class F>
Trunc<typename F::value_type> from_poly(const F& f, const Polynomial& p, int N);
template <class F>
Trunc<typename F::value_type> add(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N);
template <class F>
Trunc<typename F::value_type> sub(const F& f, const Trunc<typename F::value_type>& a,
                                  const Trunc<typename F::value_type>& b, int N);
template <class F>
Trunc<typename F::value_type> scale(const F& f, const Trunc<typename F::value_type>& a, const Rational& q, int N);
/// Reciprocal by the recurrence c_alpha = -(1/a_0) sum_{0<beta<=alpha} a_beta c_{alpha-beta}.
template <class F>
Trunc<typename F::value_type> recip(const F& f, const Trunc<typename F::value_type>& a, int N);
template <class F>
Trunc<typename F::value_type> antider(const F& f, const Trunc<typename F::value_type>& a, int var, int N);
template <class F>
Trunc<typename F::value_type> deriv(const F& f, const Trunc<typename F::value_type>& a, int var, int N);
template <class F>
Trunc<typename F::value_type> restrict0(const F& f, const Trunc<typename F::value_type>& a, int var, int N);
/// Result coefficient at alpha is a's coefficient at beta with beta[sigma[i]] = alpha[i].
template <class F>
Trunc<typename F::value_type> permute(const F& f, const Trunc<typename F::value_type>& a,
                                      std::span<const int> sigma, int N);
/// f(args_1, ..., args_n) truncated at N; every argument must vanish at 0.
template <class F>
Trunc<typename F::value_type> substitute(const F& f, const Trunc<typename F::value_type>& outer,
                                         std::span<const Trunc<typename F::value_type>> args, int N);
/// Real (imag=false) or imaginary part of a(x + i y) in 2n variables (x, y).
template <class F>
Trunc<typename F::value_type> complexify(const F& f, const Trunc<typename F::value_type>& a, bool imag, int N);

Trunc<Ball> to_balls(const Trunc<Rational>& a, long prec, int N);

/// The series X_var in `arity` variables.
template <class F>
Trunc<typename F::value_type> coordinate(const F& f, int arity, int var, int N);

}  // namespace kernels
}  // namespace ian
